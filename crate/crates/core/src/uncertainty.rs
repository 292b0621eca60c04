//! Support/dimension uncertainty bounds for functions on transitive G-sets,
//! with equality classification.
//!
//! For `f ≠ 0` with support `S` and associated block `X_S`:
//! `|S|·dim 𝔽Gf ≥ |X| + |S| − |X_S| ≥ |X|`.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::character::{homs_to_units, Character};
use crate::error::{input, violation, Error, Result};
use crate::field::{splitting_extension, Field, FieldValue};
use crate::fourier::{abelian_characters, build_dual_set, fourier_transform, rank_support, DualSet};
use crate::function::{dim_fgf, FunctionOnX};
use crate::group::{Group, Subgroup};
use crate::gset::{right_stabilizer, sorted, GSet};
use crate::linalg;

/// Evidence that `f` is a coset-indicator-like function: `S = X_S` is a
/// block, `𝒮 = ζ⁻¹(S)` is a subgroup and `f(βx₀) = c·η(β)` on `𝒮`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqualityCertificate {
    pub x0: usize,
    pub block: Vec<usize>,
    pub lifted_subgroup: Subgroup,
    pub character: Character,
    pub scalar: FieldValue,
}

impl EqualityCertificate {
    pub fn validate(&self, f: &FunctionOnX) -> Result<()> {
        let xs = f.gset();
        let field = f.field();
        if f.support() != self.block {
            return violation("certificate block is not the support");
        }
        if !xs.is_block(&self.block)? {
            return violation("certificate support is not a block");
        }
        let lift = xs.zeta_preimage(self.x0, &self.block)?;
        if lift != self.lifted_subgroup.elements() || !xs.group().is_subgroup(&lift)? {
            return violation("certificate lift is not ζ⁻¹(S) or not a subgroup");
        }
        for &b in self.lifted_subgroup.elements() {
            let want = field.mul(&self.scalar, self.character.value(b).expect("domain is the lift"));
            if *f.value(xs.act(b, self.x0)) != want {
                return violation(format!("f(βx₀) ≠ c·η(β) at β = {b}"));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": "coset-indicator-like",
            "x0": self.x0,
            "block": self.block,
            "lifted_subgroup": self.lifted_subgroup.elements(),
            "character": self.character.to_json(),
            "scalar": self.character.field().value_to_json(&self.scalar),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UncertaintyReport {
    pub group: String,
    pub action: String,
    pub field: String,
    pub x0: usize,
    pub support: Vec<usize>,
    pub lift: Vec<usize>,
    pub lift_stabilizer: Vec<usize>,
    pub block: Vec<usize>,
    pub supp_size: usize,
    pub dim: usize,
    pub block_size: usize,
    pub lhs: usize,
    pub rhs_sharp: usize,
    pub rhs_classical: usize,
    pub sharp_equality: bool,
    pub classical_equality: bool,
    pub rank_support: Option<usize>,
    pub certificate: Option<EqualityCertificate>,
}

impl UncertaintyReport {
    fn assemble(f: &FunctionOnX, x0: usize, lift: Vec<usize>, stab: Vec<usize>, block: Vec<usize>, dim: usize) -> Result<Self> {
        let xs = f.gset();
        let support = f.support();
        let m = xs.size();
        let s = support.len();
        let lhs = s * dim;
        let rhs_sharp = m + s - block.len();
        let r = UncertaintyReport {
            group: xs.group().name().to_string(),
            action: xs.label().to_string(),
            field: f.field().spec(),
            x0,
            supp_size: s,
            dim,
            block_size: block.len(),
            lhs,
            rhs_sharp,
            rhs_classical: m,
            sharp_equality: lhs == rhs_sharp,
            classical_equality: lhs == m,
            rank_support: None,
            certificate: None,
            support,
            lift,
            lift_stabilizer: stab,
            block,
        };
        if !(r.rhs_classical <= r.rhs_sharp && r.rhs_sharp <= r.lhs) {
            return violation(format!(
                "bound fails: |X| = {} ≤ {} ≤ {} = |S|·dim",
                r.rhs_classical, r.rhs_sharp, r.lhs
            ));
        }
        Ok(r)
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "group": self.group,
            "action": self.action,
            "field": self.field,
            "x0": self.x0,
            "supp_size": self.supp_size,
            "dim": self.dim,
            "block_size": self.block_size,
            "lhs": self.lhs,
            "rhs_sharp": self.rhs_sharp,
            "rhs_classical": self.rhs_classical,
            "sharp_equality": self.sharp_equality,
            "classical_equality": self.classical_equality,
        });
        if let Some(rs) = self.rank_support {
            v["rank_support"] = json!(rs);
        }
        if let Some(c) = &self.certificate {
            v["certificate"] = c.to_json();
        }
        v
    }
}

fn resolve_x0(f: &FunctionOnX, x0: Option<usize>) -> Result<usize> {
    let supp = f.support();
    let first = *supp.first().ok_or(Error::ZeroFunction)?;
    match x0 {
        None => Ok(first),
        Some(x) if supp.binary_search(&x).is_ok() => Ok(x),
        Some(x) => input(format!("x0 = {x} is not in supp(f)")),
    }
}

/// Both sides of the sharp and classical bounds; `x₀` defaults to the
/// smallest support point.
pub fn analyze(f: &FunctionOnX, x0: Option<usize>) -> Result<UncertaintyReport> {
    let x0 = resolve_x0(f, x0)?;
    let xs = f.gset();
    xs.require_transitive()?;
    let s = f.support();
    let lift = xs.zeta_preimage(x0, &s)?;
    let stab = right_stabilizer(xs.group(), &lift)?;
    let block = xs.associated_block(x0, &s)?;
    UncertaintyReport::assemble(f, x0, lift, stab.elements().to_vec(), block, dim_fgf(f)?)
}

/// Regular-set form: the block is replaced by the right stabilizer
/// `G_S = {α : Sα = S}` of the support.
pub fn regular_analyze(f: &FunctionOnX) -> Result<UncertaintyReport> {
    if !f.gset().is_regular() {
        return input("regular_analyze needs the regular G-set");
    }
    let s = f.support();
    let x0 = resolve_x0(f, None)?;
    let gs = right_stabilizer(f.gset().group(), &s)?;
    let via_block = f.gset().associated_block(x0, &s)?;
    if via_block.len() != gs.len() {
        return violation(format!("|G_S| = {} but |X_S| = {}", gs.len(), via_block.len()));
    }
    let lift = f.gset().zeta_preimage(x0, &s)?;
    UncertaintyReport::assemble(f, x0, lift, gs.elements().to_vec(), gs.elements().to_vec(), dim_fgf(f)?)
}

/// Translates chosen by the covering argument: `α₁, …` from `𝒮′⁻¹` until
/// their images of `S` cover `𝒮′⁻¹S`, then one element of `𝒮⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GreedyBound {
    pub t: usize,
    pub chosen: Vec<usize>,
    pub dim: usize,
    pub cover_rhs: usize,
}

pub fn greedy_translate_bound(f: &FunctionOnX, x0: usize) -> Result<GreedyBound> {
    let xs = f.gset();
    let g = xs.group();
    let s = f.support();
    if s.is_empty() {
        return Err(Error::ZeroFunction);
    }
    if s.len() == xs.size() {
        return Err(Error::FullSupport);
    }
    let x0 = resolve_x0(f, Some(x0))?;
    let lift = xs.zeta_preimage(x0, &s)?;
    let comp_inv = sorted(g.elements().filter(|a| lift.binary_search(a).is_err()).map(|a| g.inv(a)));
    let target = xs.image(&comp_inv, &s);
    let mut chosen = vec![comp_inv[0]];
    let mut union: BTreeSet<usize> = xs.translate_set(comp_inv[0], &s).into_iter().collect();
    while union.len() < target.len() {
        let next = comp_inv
            .iter()
            .copied()
            .find(|&a| xs.translate_set(a, &s).iter().any(|x| !union.contains(x)))
            .expect("target is the union of all candidate translates");
        chosen.push(next);
        union.extend(xs.translate_set(next, &s));
    }
    let last = g.elements().map(|a| g.inv(a)).filter(|b| lift.contains(&g.inv(*b))).min().expect("1 ∈ 𝒮");
    chosen.push(last);
    let t = chosen.len();
    let dim = dim_fgf(f)?;
    let block = xs.associated_block(x0, &s)?;
    let cover_rhs = t * s.len() - s.len() + block.len();
    if t > dim {
        return violation(format!("greedy picked t = {t} > dim = {dim}"));
    }
    if xs.size() > cover_rhs {
        return violation(format!("|X| = {} > t|S| − |S| + |X_S| = {cover_rhs}", xs.size()));
    }
    Ok(GreedyBound { t, chosen, dim, cover_rhs })
}

/// Checks the coset-indicator condition directly, without computing
/// `dim 𝔽Gf`: `Err(reason)` when it fails.
pub fn coset_condition(f: &FunctionOnX, x0: usize) -> Result<std::result::Result<EqualityCertificate, String>> {
    let xs = f.gset();
    let g = xs.group();
    let field = f.field();
    let s = f.support();
    let lift = xs.zeta_preimage(x0, &s)?;
    if !g.is_subgroup(&lift)? {
        return Ok(Err("ζ⁻¹(supp f) is not a subgroup".into()));
    }
    let h = g.subgroup(&lift)?;
    let c = f.value(x0).clone();
    let values: Vec<FieldValue> = lift.iter().map(|&b| field.div(f.value(xs.act(b, x0)), &c)).collect();
    let character = match Character::new(g, field, &h, values) {
        Ok(ch) => ch,
        Err(_) => return Ok(Err("f restricted to the lift is not a scaled character".into())),
    };
    let cert = EqualityCertificate { x0, block: s, lifted_subgroup: h, character, scalar: c };
    cert.validate(f)?;
    Ok(Ok(cert))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub classical_equality: bool,
    pub certificate: Option<EqualityCertificate>,
    pub refutation: Option<String>,
}

/// Certificate iff `|S|·dim 𝔽Gf = |X|`; the equivalence is asserted.
pub fn classify_equality_classical(f: &FunctionOnX, x0: Option<usize>) -> Result<Classification> {
    let x0 = resolve_x0(f, x0)?;
    let report = analyze(f, Some(x0))?;
    let cond = coset_condition(f, x0)?;
    if report.classical_equality != cond.is_ok() {
        return violation(format!(
            "classical equality is {} but the coset condition says {:?}",
            report.classical_equality,
            cond.as_ref().err()
        ));
    }
    Ok(match cond {
        Ok(cert) => Classification { classical_equality: true, certificate: Some(cert), refutation: None },
        Err(why) => Classification { classical_equality: false, certificate: None, refutation: Some(why) },
    })
}

/// `f(γβ) = c·η(β)` for `β ∈ H`, zero off `γH`, on the regular set.
pub fn coset_indicator_function(
    group: Arc<Group>,
    h: &Subgroup,
    gamma: usize,
    eta: &Character,
    c: &FieldValue,
    field: &Field,
) -> Result<FunctionOnX> {
    if field.is_zero(c) {
        return input("c must be nonzero");
    }
    if eta.domain() != h.elements() || eta.field() != field {
        return input("η must be a character of H over the given field");
    }
    if gamma >= group.order() {
        return input(format!("γ = {gamma} out of range"));
    }
    let xs = Arc::new(GSet::regular(group.clone()));
    let mut values = vec![field.zero(); group.order()];
    for (&b, v) in h.elements().iter().zip(eta.values()) {
        values[group.mul(gamma, b)] = field.mul(c, v);
    }
    FunctionOnX::new(xs, field.clone(), values)
}

/// Theorem-level check with Fourier data: `rk-supp(f̂) = dim 𝔽Gf` and
/// `|S|·rk-supp(f̂) ≥ |X| + |S| − |X_S|`.
pub fn rank_support_analyze(f: &FunctionOnX, ds: &DualSet) -> Result<UncertaintyReport> {
    let order = f.gset().group().order();
    if !ds.field().is_semisimple_for(order) {
        return Err(Error::NotSemisimple { field: ds.field().spec(), order });
    }
    let mut report = analyze(f, None)?;
    let rs = rank_support(&fourier_transform(f, ds)?);
    if rs != report.dim {
        return violation(format!("rk-supp = {rs} ≠ dim = {}", report.dim));
    }
    if report.supp_size * rs < report.rhs_sharp {
        return violation("rank-support bound fails");
    }
    report.rank_support = Some(rs);
    Ok(report)
}

/// `f = c·χ·I_{γH}` with a global character χ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetDecomposition {
    pub gamma: usize,
    pub subgroup: Subgroup,
    pub character: Character,
    pub scalar: FieldValue,
}

impl CosetDecomposition {
    pub fn to_json(&self) -> Value {
        let f = self.character.field();
        json!({
            "gamma": self.gamma,
            "subgroup": self.subgroup.elements(),
            "character": self.character.to_json(),
            "scalar": f.value_to_json(&self.scalar),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundLedger {
    pub order: usize,
    pub field: String,
    pub supp: usize,
    pub supp_hat: usize,
    pub stabilizer: usize,
    pub product: usize,
    pub rhs_sharp: usize,
    pub classical_equality: bool,
    pub sharp_equality: bool,
    pub decomposition: Option<CosetDecomposition>,
}

impl BoundLedger {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "order": self.order,
            "field": self.field,
            "supp": self.supp,
            "supp_hat": self.supp_hat,
            "stabilizer": self.stabilizer,
            "product": self.product,
            "rhs_sharp": self.rhs_sharp,
            "classical_equality": self.classical_equality,
            "sharp_equality": self.sharp_equality,
        });
        if let Some(d) = &self.decomposition {
            v["decomposition"] = d.to_json();
        }
        v
    }
}

/// Abelian regular-set ledger for `|supp f|·|supp f̂| ≥ |G|` and its
/// sharpening `≥ |G| + |supp f| − |G_{supp f}|`. When the first is an
/// equality, recovers `f = c·χ·I_{γH}`. Transforms are taken over the
/// splitting field of `f`'s field.
pub fn donoho_stark_check(f: &FunctionOnX) -> Result<BoundLedger> {
    let xs = f.gset();
    let g = xs.group_arc().clone();
    if !g.is_abelian() {
        return Err(Error::NotAbelian);
    }
    if !xs.is_regular() {
        return input("the abelian ledger needs the regular G-set");
    }
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let e = splitting_extension(f.field(), &g)?;
    let bundle = Arc::new(abelian_characters(g.clone(), &e)?);
    let ds = build_dual_set(xs.clone(), bundle)?;
    donoho_stark_with(f, &ds)
}

/// As [`donoho_stark_check`] with a prebuilt character dual set.
pub fn donoho_stark_with(f: &FunctionOnX, ds: &DualSet) -> Result<BoundLedger> {
    let g = f.gset().group();
    let e = ds.field();
    let ft = fourier_transform(f, ds)?;
    let supp = f.support();
    let supp_hat = ft.blocks().iter().filter(|b| linalg::count_nonzero(e, b) > 0).count();
    let stabilizer = right_stabilizer(g, &supp)?.len();
    let n = g.order();
    let product = supp.len() * supp_hat;
    let rhs_sharp = n + supp.len() - stabilizer;
    if product < rhs_sharp || rhs_sharp < n {
        return violation(format!("{product} < {rhs_sharp} or {rhs_sharp} < {n}"));
    }
    let classical_equality = product == n;
    let decomposition = if classical_equality { Some(decompose(f, e)?) } else { None };
    Ok(BoundLedger {
        order: n,
        field: e.spec(),
        supp: supp.len(),
        supp_hat,
        stabilizer,
        product,
        rhs_sharp,
        classical_equality,
        sharp_equality: product == rhs_sharp,
        decomposition,
    })
}

/// `γ = min S`, `H = γ⁻¹S`, `η(β) = f(γβ)/f(γ)` extended to a global
/// character χ, `c = f(γ)/χ(γ)`; the reconstruction is checked exactly.
fn decompose(f: &FunctionOnX, e: &Field) -> Result<CosetDecomposition> {
    let g = f.gset().group();
    let fe = f.embed(e)?;
    let s = fe.support();
    let gamma = s[0];
    let ginv = g.inv(gamma);
    let h_elems = sorted(s.iter().map(|&x| g.mul(ginv, x)));
    if !g.is_subgroup(&h_elems)? {
        return violation("equality support is not a coset");
    }
    let h = g.subgroup(&h_elems)?;
    let fg = fe.value(gamma).clone();
    let eta_vals: Vec<FieldValue> = h_elems.iter().map(|&b| e.div(fe.value(g.mul(gamma, b)), &fg)).collect();
    let eta = Character::new(g, e, &h, eta_vals).map_err(|_| Error::InvariantViolation("η is not a character".into()))?;
    let chi = homs_to_units(g, &g.whole(), e)
        .into_iter()
        .find(|chi| chi.restrict(&h).as_ref() == Some(&eta))
        .ok_or_else(|| Error::InvariantViolation("η does not extend to G".into()))?;
    let scalar = e.div(&fg, chi.value(gamma).unwrap());
    let rebuilt: Vec<FieldValue> = g
        .elements()
        .map(|x| if s.binary_search(&x).is_ok() { e.mul(&scalar, chi.value(x).unwrap()) } else { e.zero() })
        .collect();
    if rebuilt != fe.values() {
        return violation("c·χ·I_{γH} does not reproduce f");
    }
    Ok(CosetDecomposition { gamma, subgroup: h, character: chi, scalar })
}
