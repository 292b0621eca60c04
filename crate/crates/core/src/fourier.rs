//! Representation bundles, dual sets and Fourier transforms of functions on
//! a G-set.
//!
//! A dual set is a basis `λ^ψ_{ij}` of `𝔼^X` transforming as
//! `αλ^ψ = λ^ψ·ρ^ψ(α)`, and `f̂(λ^ψ_{ij}) = Σ_x f(x)λ^ψ_{ij}(x)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::character::homs_to_units;
use crate::error::{input, violation, Error, Result};
use crate::field::{field_from_spec, CyclotomicField, Field, FieldValue};
use crate::function::FunctionOnX;
use crate::group::Group;
use crate::gset::GSet;
use crate::linalg::{self, Matrix};

pub const DEFAULT_CHEBOTAREV_CAP: u64 = 7;

/// Irreducible representation given by one matrix per group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Irrep {
    pub degree: usize,
    pub matrices: Vec<Matrix>,
}

#[derive(Clone, Debug)]
pub struct RepresentationBundle {
    group: Arc<Group>,
    field: Field,
    irreps: Vec<Irrep>,
}

impl RepresentationBundle {
    /// Validates homomorphism, `Σ n_ψ² = |G|` and the Schur relations.
    pub fn new(group: Arc<Group>, field: Field, irreps: Vec<Irrep>) -> Result<Self> {
        let b = RepresentationBundle { group, field, irreps };
        b.check_homomorphisms()?;
        let got: usize = b.irreps.iter().map(|r| r.degree * r.degree).sum();
        if got != b.group.order() {
            return Err(Error::WrongDegreeSum { got, expected: b.group.order() });
        }
        b.check_schur(&mut ChaCha8Rng::seed_from_u64(0), 400)?;
        Ok(b)
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn irreps(&self) -> &[Irrep] {
        &self.irreps
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.irreps.iter().map(|r| r.degree).collect()
    }

    fn check_homomorphisms(&self) -> Result<()> {
        let g = &self.group;
        let f = &self.field;
        for (k, r) in self.irreps.iter().enumerate() {
            if r.degree == 0 || r.matrices.len() != g.order() {
                return Err(Error::NotHomomorphism(format!("irrep {k}: need one matrix per element")));
            }
            if r.matrices.iter().any(|m| m.len() != r.degree || m.iter().any(|row| row.len() != r.degree)) {
                return Err(Error::NotHomomorphism(format!("irrep {k}: matrix shape ≠ degree {}", r.degree)));
            }
            if r.matrices[g.identity()] != linalg::identity(f, r.degree) {
                return Err(Error::NotHomomorphism(format!("irrep {k}: ρ(1) ≠ I")));
            }
            for a in g.elements() {
                for b in g.elements() {
                    if linalg::mat_mul(f, &r.matrices[a], &r.matrices[b]) != r.matrices[g.mul(a, b)] {
                        return Err(Error::NotHomomorphism(format!("irrep {k}: ρ({a}·{b}) ≠ ρ({a})ρ({b})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// `Σ_β ρ^ψ_{ij}(β⁻¹)ρ^φ_{kl}(βα) = (n/n_ψ)ρ^ψ_{il}(α)·[ψ=φ, j=k]`;
    /// every tuple when `|G| ≤ 8`, otherwise `samples` random tuples.
    pub fn check_schur(&self, rng: &mut dyn RngCore, samples: usize) -> Result<()> {
        let g = &self.group;
        let n = g.order();
        let mut tuples: Vec<[usize; 7]> = Vec::new();
        let r = self.irreps.len();
        if n <= 8 {
            for psi in 0..r {
                for phi in 0..r {
                    let (dp, df) = (self.irreps[psi].degree, self.irreps[phi].degree);
                    for i in 0..dp {
                        for j in 0..dp {
                            for k in 0..df {
                                for l in 0..df {
                                    for a in 0..n {
                                        tuples.push([psi, phi, i, j, k, l, a]);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        } else {
            for _ in 0..samples {
                let psi = rng.gen_range(0..r);
                let phi = rng.gen_range(0..r);
                let (dp, df) = (self.irreps[psi].degree, self.irreps[phi].degree);
                tuples.push([
                    psi,
                    phi,
                    rng.gen_range(0..dp),
                    rng.gen_range(0..dp),
                    rng.gen_range(0..df),
                    rng.gen_range(0..df),
                    rng.gen_range(0..n),
                ]);
            }
        }
        for t in tuples {
            if let Some(msg) = self.schur_defect(t) {
                return Err(Error::OrthogonalityFailure(msg));
            }
        }
        Ok(())
    }

    fn schur_defect(&self, [psi, phi, i, j, k, l, a]: [usize; 7]) -> Option<String> {
        let g = &self.group;
        let f = &self.field;
        let (rp, rf) = (&self.irreps[psi].matrices, &self.irreps[phi].matrices);
        let lhs = g.elements().fold(f.zero(), |acc, b| {
            f.add(&acc, &f.mul(&rp[g.inv(b)][i][j], &rf[g.mul(b, a)][k][l]))
        });
        let rhs = if psi == phi && j == k {
            let ratio = f.div(&f.from_i64(g.order() as i64), &f.from_i64(self.irreps[psi].degree as i64));
            f.mul(&ratio, &rp[a][i][l])
        } else {
            f.zero()
        };
        (lhs != rhs).then(|| format!("ψ={psi} φ={phi} (i,j,k,l)=({i},{j},{k},{l}) α={a}"))
    }

    /// `{"field", "irreps": [{"degree", "matrices": {"α": [[v]]}}]}`.
    pub fn from_json(group: Arc<Group>, v: &Value) -> Result<Self> {
        let field = field_from_spec(
            v.get("field").and_then(Value::as_str).ok_or_else(|| Error::ParseError("bundle needs \"field\"".into()))?,
        )?;
        let irreps = v
            .get("irreps")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::ParseError("bundle needs \"irreps\"".into()))?;
        let mut out = Vec::new();
        for (k, ir) in irreps.iter().enumerate() {
            let degree = ir
                .get("degree")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::ParseError(format!("irrep {k}: missing degree")))? as usize;
            let mats = ir
                .get("matrices")
                .and_then(Value::as_object)
                .ok_or_else(|| Error::ParseError(format!("irrep {k}: missing matrices")))?;
            let mut matrices = vec![None; group.order()];
            for (key, m) in mats {
                let a: usize = key.parse().map_err(|_| Error::ParseError(format!("element key {key:?}")))?;
                if a >= group.order() {
                    return input(format!("irrep {k}: element {a} out of range"));
                }
                let rows = m.as_array().ok_or_else(|| Error::ParseError(format!("irrep {k}: matrix {a}")))?;
                let parsed = rows
                    .iter()
                    .map(|row| {
                        row.as_array()
                            .ok_or_else(|| Error::ParseError(format!("irrep {k}: matrix {a} row")))?
                            .iter()
                            .map(|x| field.parse_value(x))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Matrix>>()?;
                matrices[a] = Some(parsed);
            }
            let matrices = matrices
                .into_iter()
                .enumerate()
                .map(|(a, m)| m.ok_or_else(|| Error::NotHomomorphism(format!("irrep {k}: no matrix for element {a}"))))
                .collect::<Result<Vec<_>>>()?;
            out.push(Irrep { degree, matrices });
        }
        RepresentationBundle::new(group, field, out)
    }

    pub fn to_json(&self) -> Value {
        let irreps: Vec<Value> = self
            .irreps
            .iter()
            .map(|r| {
                let mats: BTreeMap<String, Value> = r
                    .matrices
                    .iter()
                    .enumerate()
                    .map(|(a, m)| (a.to_string(), matrix_json(&self.field, m)))
                    .collect();
                json!({"degree": r.degree, "matrices": mats})
            })
            .collect();
        json!({"field": self.field.spec(), "irreps": irreps})
    }
}

pub fn matrix_json(field: &Field, m: &Matrix) -> Value {
    Value::Array(m.iter().map(|row| Value::Array(row.iter().map(|v| field.value_to_json(v)).collect())).collect())
}

/// The `|G|` characters of an abelian group as 1×1 irreps.
pub fn abelian_characters(group: Arc<Group>, field: &Field) -> Result<RepresentationBundle> {
    if !group.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let e = group.exponent();
    if field.roots_of_unity_order() % e != 0 {
        return Err(Error::NoSuchRoot { field: field.spec(), n: e });
    }
    let chars = homs_to_units(&group, &group.whole(), field);
    let irreps = chars
        .iter()
        .map(|c| Irrep { degree: 1, matrices: c.values().iter().map(|v| vec![vec![v.clone()]]).collect() })
        .collect();
    RepresentationBundle::new(group, field.clone(), irreps)
}

/// Basis functions belonging to one irrep: `lambdas[i][j]` is `λ^ψ_{ij}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualBlock {
    pub lambdas: Vec<Vec<Vec<FieldValue>>>,
}

impl DualBlock {
    pub fn multiplicity(&self) -> usize {
        self.lambdas.len()
    }
}

#[derive(Clone, Debug)]
pub struct DualSet {
    gset: Arc<GSet>,
    bundle: Arc<RepresentationBundle>,
    blocks: Vec<DualBlock>,
}

impl DualSet {
    /// Checks the basis property (`Σ m_ψ n_ψ = m`, invertible evaluation
    /// matrix) and `αλ^ψ = λ^ψ·ρ^ψ(α)` for every α.
    pub fn new(gset: Arc<GSet>, bundle: Arc<RepresentationBundle>, blocks: Vec<DualBlock>) -> Result<Self> {
        if gset.group() != bundle.group().as_ref() {
            return Err(Error::MismatchedContext("bundle and G-set have different groups".into()));
        }
        if blocks.len() != bundle.irreps().len() {
            return input(format!("{} blocks for {} irreps", blocks.len(), bundle.irreps().len()));
        }
        let m = gset.size();
        for (b, ir) in blocks.iter().zip(bundle.irreps()) {
            if b.lambdas.iter().any(|row| row.len() != ir.degree || row.iter().any(|l| l.len() != m)) {
                return input("dual block shape does not match its irrep");
            }
        }
        let ds = DualSet { gset, bundle, blocks };
        let total: usize = ds.multiplicities().iter().zip(ds.bundle.degrees()).map(|(mu, n)| mu * n).sum();
        if total != m {
            return violation(format!("Σ m_ψ n_ψ = {total} ≠ |X| = {m}"));
        }
        if ds.field().is_zero(&ds.determinant()) {
            return violation("dual set evaluation matrix is singular");
        }
        ds.check_transformation_law()?;
        Ok(ds)
    }

    pub fn gset(&self) -> &Arc<GSet> {
        &self.gset
    }

    pub fn bundle(&self) -> &Arc<RepresentationBundle> {
        &self.bundle
    }

    pub fn field(&self) -> &Field {
        self.bundle.field()
    }

    pub fn blocks(&self) -> &[DualBlock] {
        &self.blocks
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.blocks.iter().map(DualBlock::multiplicity).collect()
    }

    /// All `λ^ψ_{ij}` as rows, ψ-major then row-major.
    pub fn evaluation_matrix(&self) -> Matrix {
        self.blocks.iter().flat_map(|b| b.lambdas.iter().flatten().cloned()).collect()
    }

    pub fn determinant(&self) -> FieldValue {
        linalg::determinant(self.field(), &self.evaluation_matrix())
    }

    pub fn check_transformation_law(&self) -> Result<()> {
        let f = self.field();
        let g = self.gset.group();
        for a in g.elements() {
            let ainv = g.inv(a);
            for (psi, (b, ir)) in self.blocks.iter().zip(self.bundle.irreps()).enumerate() {
                let rho = &ir.matrices[a];
                for (i, row) in b.lambdas.iter().enumerate() {
                    for j in 0..ir.degree {
                        for x in self.gset.points() {
                            let lhs = &row[j][self.gset.act(ainv, x)];
                            let rhs = (0..ir.degree)
                                .fold(f.zero(), |acc, k| f.add(&acc, &f.mul(&row[k][x], &rho[k][j])));
                            if *lhs != rhs {
                                return violation(format!("αλ ≠ λρ(α) at ψ={psi}, i={i}, j={j}, α={a}"));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// `λ_k = Σ_β ρ_{ak}(β⁻¹)·δ_{βy}`: a row of `n_ψ` functions transforming
/// by `ρ`, or all zero.
fn averaged_row(xs: &GSet, field: &Field, ir: &Irrep, a: usize, y: usize) -> Vec<Vec<FieldValue>> {
    let g = xs.group();
    (0..ir.degree)
        .map(|k| {
            let mut lam = vec![field.zero(); xs.size()];
            for b in g.elements() {
                let x = xs.act(b, y);
                lam[x] = field.add(&lam[x], &ir.matrices[g.inv(b)][a][k]);
            }
            lam
        })
        .collect()
}

/// Projects each standard basis function onto the row spaces of every
/// irrep and keeps rows that enlarge the span until it is all of `𝔼^X`.
pub fn build_dual_set(gset: Arc<GSet>, bundle: Arc<RepresentationBundle>) -> Result<DualSet> {
    let field = bundle.field().clone();
    if !field.is_semisimple_for(gset.group().order()) {
        return Err(Error::NotSemisimple { field: field.spec(), order: gset.group().order() });
    }
    let m = gset.size();
    let mut span: Matrix = Vec::new();
    let mut blocks = Vec::new();
    for ir in bundle.irreps() {
        let mut lambdas = Vec::new();
        'points: for y in gset.points() {
            for a in 0..ir.degree {
                if span.len() == m {
                    break 'points;
                }
                let row = averaged_row(&gset, &field, ir, a, y);
                let mut trial = span.clone();
                trial.extend(row.iter().cloned());
                let r = linalg::exact_rank(&field, &trial);
                if r == span.len() + ir.degree {
                    span = trial;
                    lambdas.push(row);
                } else if r != span.len() {
                    return violation(format!("irreducible row raised the rank by {}", r - span.len()));
                }
            }
        }
        blocks.push(DualBlock { lambdas });
    }
    DualSet::new(gset, bundle, blocks)
}

/// `f̂(λ^ψ)` as an `m_ψ × n_ψ` matrix per irrep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourierTransform {
    field: Field,
    degrees: Vec<usize>,
    blocks: Vec<Matrix>,
}

impl FourierTransform {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }

    /// `Σ_ψ n_ψ·|supp f̂(λ^ψ)|` for this particular dual set.
    pub fn support_count(&self) -> usize {
        self.blocks.iter().zip(&self.degrees).map(|(b, n)| n * linalg::count_nonzero(&self.field, b)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().flatten().flatten().all(|v| self.field.is_zero(v))
    }

    pub fn to_json(&self) -> Value {
        let blocks: Vec<Value> = self
            .blocks
            .iter()
            .zip(&self.degrees)
            .map(|(b, n)| json!({"degree": n, "multiplicity": b.len(), "matrix": matrix_json(&self.field, b)}))
            .collect();
        json!({"field": self.field.spec(), "blocks": blocks})
    }
}

pub fn fourier_transform(f: &FunctionOnX, ds: &DualSet) -> Result<FourierTransform> {
    if f.gset().as_ref() != ds.gset().as_ref() {
        return Err(Error::MismatchedContext("function and dual set live on different G-sets".into()));
    }
    let e = ds.field();
    let fe = f.embed(e).map_err(|_| Error::FieldMismatch(format!("{} does not embed in {}", f.field(), e)))?;
    let blocks = ds
        .blocks()
        .iter()
        .map(|b| {
            b.lambdas
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|lam| {
                            lam.iter().zip(fe.values()).fold(e.zero(), |acc, (l, v)| {
                                if e.is_zero(v) {
                                    acc
                                } else {
                                    e.add(&acc, &e.mul(l, v))
                                }
                            })
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    Ok(FourierTransform { field: e.clone(), degrees: ds.bundle().degrees(), blocks })
}

/// `(αf)^(λ^ψ) = f̂(λ^ψ)·ρ^ψ(α⁻¹)`, for every α when `|G| ≤ 12`,
/// otherwise for `trials` random α.
pub fn equivariance_check(f: &FunctionOnX, ds: &DualSet, trials: usize, rng: &mut dyn RngCore) -> Result<bool> {
    let g = ds.gset().group();
    let alphas: Vec<usize> = if g.order() <= 12 {
        g.elements().collect()
    } else {
        (0..trials).map(|_| rng.gen_range(0..g.order())).collect()
    };
    let base = fourier_transform(f, ds)?;
    let e = ds.field();
    for a in alphas {
        let lhs = fourier_transform(&f.translate(a), ds)?;
        let ainv = g.inv(a);
        for ((l, b), ir) in lhs.blocks.iter().zip(&base.blocks).zip(ds.bundle().irreps()) {
            if b.is_empty() {
                continue;
            }
            if *l != linalg::mat_mul(e, b, &ir.matrices[ainv]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `Σ_ψ n_ψ·rank f̂(λ^ψ)`.
pub fn rank_support(ft: &FourierTransform) -> usize {
    ft.blocks.iter().zip(&ft.degrees).map(|(b, n)| n * linalg::exact_rank(&ft.field, b)).sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockWitness {
    pub q: Matrix,
    pub p: Matrix,
    pub rank: usize,
    pub nonzero: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinSuppSummary {
    pub rank_support: usize,
    pub witness_count: usize,
    /// Weighted support after column operations only, an upper bound for the
    /// minimum over changes of the irreps alone.
    pub column_only_count: usize,
    pub sampled_min: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct MinSuppWitness {
    pub blocks: Vec<BlockWitness>,
    pub summary: MinSuppSummary,
}

fn random_invertible(field: &Field, n: usize, rng: &mut dyn RngCore) -> Matrix {
    loop {
        let m: Matrix = (0..n).map(|_| (0..n).map(|_| field.random_value(rng)).collect()).collect();
        if !field.is_zero(&linalg::determinant(field, &m)) {
            return m;
        }
    }
}

/// Per irrep, invertible `Q`, `P` with `Q·f̂(λ^ψ)·P` diagonal with
/// `rank` ones, so the weighted count equals the rank support. Also
/// samples `samples` random base changes and checks none goes lower.
pub fn min_supp_witness(ft: &FourierTransform, samples: usize, rng: &mut dyn RngCore) -> Result<MinSuppWitness> {
    let e = &ft.field;
    let mut blocks = Vec::new();
    let mut witness_count = 0;
    let mut column_only_count = 0;
    for (b, &n) in ft.blocks.iter().zip(&ft.degrees) {
        let (q, p, rank) = linalg::diagonalizing_witness(e, b, n);
        let d = if b.is_empty() { Vec::new() } else { linalg::mat_mul(e, &linalg::mat_mul(e, &q, b), &p) };
        let nonzero = linalg::count_nonzero(e, &d);
        let diagonal_ok = d
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, v)| *v == if i == j && i < rank { e.one() } else { e.zero() }));
        if !diagonal_ok || nonzero != rank {
            return violation("diagonalizing witness is not diagonal");
        }
        witness_count += n * nonzero;
        if !b.is_empty() {
            let (r, _, _) = linalg::rref_with_transform(e, &linalg::transpose(b));
            column_only_count += n * linalg::count_nonzero(e, &r);
        }
        blocks.push(BlockWitness { q, p, rank, nonzero });
    }
    let rank_support = rank_support(ft);
    if witness_count != rank_support {
        return violation(format!("witness count {witness_count} ≠ rank support {rank_support}"));
    }
    let mut sampled_min = None;
    for _ in 0..samples {
        let mut count = 0;
        for (b, &n) in ft.blocks.iter().zip(&ft.degrees) {
            if b.is_empty() {
                continue;
            }
            let q = random_invertible(e, b.len(), rng);
            let p = random_invertible(e, n, rng);
            count += n * linalg::count_nonzero(e, &linalg::mat_mul(e, &linalg::mat_mul(e, &q, b), &p));
        }
        if count < rank_support {
            return violation(format!("base change reached {count} < rank support {rank_support}"));
        }
        sampled_min = Some(sampled_min.map_or(count, |m: usize| m.min(count)));
    }
    Ok(MinSuppWitness {
        blocks,
        summary: MinSuppSummary { rank_support, witness_count, column_only_count, sampled_min },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorReport {
    pub p: u64,
    pub minors: usize,
    pub all_nonzero: bool,
}

/// Every square minor of `(ω^{ij})_{0≤i,j<p}` over ℚ(ζ_p).
pub fn chebotarev_minor_check(p: u64, cap: u64) -> Result<MinorReport> {
    if p > cap {
        return Err(Error::CapExceeded { what: format!("p = {p}"), cap: cap as usize });
    }
    if !crate::arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let e = Field::new(CyclotomicField::new(p)?);
    let w = e.primitive_root_of_unity(p)?;
    let n = p as usize;
    let powers: Vec<FieldValue> = (0..n).map(|k| e.pow(&w, k as u64)).collect();
    let subsets: Vec<Vec<usize>> = (1u32..1 << n)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
        .collect();
    let pairs: Vec<(&Vec<usize>, &Vec<usize>)> = subsets
        .iter()
        .flat_map(|r| subsets.iter().filter(move |c| c.len() == r.len()).map(move |c| (r, c)))
        .collect();
    let all_nonzero = pairs.par_iter().all(|(rows, cols)| {
        let minor: Matrix =
            rows.iter().map(|&i| cols.iter().map(|&j| powers[(i * j) % n].clone()).collect()).collect();
        !e.is_zero(&linalg::determinant(&e, &minor))
    });
    Ok(MinorReport { p, minors: pairs.len(), all_nonzero })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::dim_fgf;

    fn s3_bundle() -> Arc<RepresentationBundle> {
        let text = include_str!("../../../fixtures/s3_bundle.json");
        let v: Value = serde_json::from_str(text).unwrap();
        Arc::new(RepresentationBundle::from_json(Arc::new(Group::symmetric3()), &v).unwrap())
    }

    #[test]
    fn abelian_bundles() {
        let z6 = Arc::new(Group::cyclic(6));
        let f7 = field_from_spec("GF(7)").unwrap();
        let b = abelian_characters(z6.clone(), &f7).unwrap();
        assert_eq!(b.irreps().len(), 6);
        let z2 = abelian_characters(Arc::new(Group::cyclic(2)), &field_from_spec("Q").unwrap()).unwrap();
        assert_eq!(z2.irreps().len(), 2);
        let v4 = abelian_characters(Arc::new(Group::by_name("Z2xZ2").unwrap()), &field_from_spec("GF(5)").unwrap())
            .unwrap();
        assert_eq!(v4.irreps().len(), 4);
        assert!(matches!(abelian_characters(Arc::new(Group::symmetric3()), &f7), Err(Error::NotAbelian)));
        assert!(matches!(
            abelian_characters(z6, &field_from_spec("GF(5)").unwrap()),
            Err(Error::NoSuchRoot { .. })
        ));
    }

    #[test]
    fn s3_bundle_validation() {
        let b = s3_bundle();
        assert_eq!(b.degrees(), vec![1, 1, 2]);
        let g = b.group().clone();
        let mut missing = b.irreps().to_vec();
        missing.pop();
        assert!(matches!(
            RepresentationBundle::new(g.clone(), b.field().clone(), missing),
            Err(Error::WrongDegreeSum { got: 2, expected: 6 })
        ));
        let mut broken = b.irreps().to_vec();
        let t = g.element_from_cycles("(12)").unwrap();
        let f = b.field();
        broken[2].matrices[t] = vec![vec![f.one(), f.one()], vec![f.zero(), f.one()]];
        assert!(matches!(
            RepresentationBundle::new(g.clone(), f.clone(), broken),
            Err(Error::NotHomomorphism(_))
        ));
        // trivial twice: homomorphisms with the right degree sum but not orthogonal
        let one = b.irreps()[0].clone();
        let twice = vec![one.clone(), one.clone(), one.clone(), one.clone(), one.clone(), one];
        assert!(matches!(
            RepresentationBundle::new(g, f.clone(), twice),
            Err(Error::OrthogonalityFailure(_))
        ));
    }

    #[test]
    fn s3_dual_sets() {
        let b = s3_bundle();
        let g = b.group().clone();
        let nat = Arc::new(GSet::natural(g.clone()).unwrap());
        let ds = build_dual_set(nat.clone(), b.clone()).unwrap();
        assert_eq!(ds.multiplicities(), vec![1, 0, 1]);
        let reg = Arc::new(GSet::regular(g));
        let dr = build_dual_set(reg, b).unwrap();
        assert_eq!(dr.multiplicities(), vec![1, 1, 2]);

        let q = field_from_spec("Q").unwrap();
        let f = FunctionOnX::from_i64(nat, q, &[1, -1, 0]).unwrap();
        let ft = fourier_transform(&f, &ds).unwrap();
        assert_eq!(rank_support(&ft), 2);
        assert_eq!(rank_support(&ft), dim_fgf(&f).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(equivariance_check(&f, &ds, 10, &mut rng).unwrap());
        let w = min_supp_witness(&ft, 5, &mut rng).unwrap();
        assert_eq!(w.blocks[2].rank, 1);
        assert_eq!(w.summary.witness_count, 2);
    }

    #[test]
    fn z6_over_gf7() {
        let z6 = Arc::new(Group::cyclic(6));
        let f7 = field_from_spec("GF(7)").unwrap();
        let b = Arc::new(abelian_characters(z6.clone(), &f7).unwrap());
        let reg = Arc::new(GSet::regular(z6.clone()));
        let ds = build_dual_set(reg.clone(), b.clone()).unwrap();
        assert_eq!(ds.multiplicities(), vec![1; 6]);
        let f = FunctionOnX::from_i64(reg.clone(), f7.clone(), &[1, 1, 0, 0, 0, 0]).unwrap();
        let ft = fourier_transform(&f, &ds).unwrap();
        let mut got: Vec<i64> = ft.blocks().iter().map(|bl| f7.format_value(&bl[0][0]).parse().unwrap()).collect();
        got.sort_unstable();
        // 1 + 3^j mod 7 for j = 0..5
        let mut want: Vec<i64> = (0..6).map(|j| (1 + 3i64.pow(j)) % 7).collect();
        want.sort_unstable();
        assert_eq!(got, want);
        assert_eq!(rank_support(&ft), 5);

        // hand-built dual set λ_j = χ_j with χ_j(a) = 3^{ja}
        let w = f7.from_i64(3);
        let irreps: Vec<Irrep> = (0..6u64)
            .map(|j| Irrep { degree: 1, matrices: (0..6u64).map(|a| vec![vec![f7.pow(&w, j * a)]]).collect() })
            .collect();
        let hb = Arc::new(RepresentationBundle::new(z6.clone(), f7.clone(), irreps.clone()).unwrap());
        let blocks: Vec<DualBlock> = irreps
            .iter()
            .map(|ir| {
                // λ(x) = χ(x)⁻¹ satisfies αλ = λ·χ(α)
                let lam: Vec<FieldValue> = (0..6).map(|x| f7.inv(&ir.matrices[x][0][0]).unwrap()).collect();
                DualBlock { lambdas: vec![vec![lam]] }
            })
            .collect();
        let hand = DualSet::new(reg, hb, blocks).unwrap();
        let ft = fourier_transform(&f, &hand).unwrap();
        let vals: Vec<i64> = ft.blocks().iter().map(|bl| f7.format_value(&bl[0][0]).parse().unwrap()).collect();
        // 1 + 3^{-j} mod 7
        assert_eq!(vals, vec![2, 6, 5, 0, 3, 4]);
    }

    #[test]
    fn transform_edge_cases() {
        let n = 5;
        let zn = Arc::new(Group::cyclic(n));
        let e = field_from_spec("Q(zeta_5)").unwrap();
        let b = Arc::new(abelian_characters(zn.clone(), &e).unwrap());
        let reg = Arc::new(GSet::regular(zn));
        let ds = build_dual_set(reg.clone(), b).unwrap();
        let ones = FunctionOnX::from_i64(reg.clone(), field_from_spec("Q").unwrap(), &[1; 5]).unwrap();
        let ft = fourier_transform(&ones, &ds).unwrap();
        let nonzero: Vec<&Matrix> = ft.blocks().iter().filter(|bl| !e.is_zero(&bl[0][0])).collect();
        assert_eq!(nonzero.len(), 1);
        assert_eq!(rank_support(&ft), 1);
        let z = FunctionOnX::zero(reg, e);
        let ft = fourier_transform(&z, &ds).unwrap();
        assert!(ft.is_zero());
        assert_eq!(rank_support(&ft), 0);
        let w = min_supp_witness(&ft, 0, &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
        assert!(w.blocks.iter().all(|bw| bw.rank == 0 && bw.nonzero == 0));
    }

    #[test]
    fn chebotarev_small_primes() {
        let r = chebotarev_minor_check(2, DEFAULT_CHEBOTAREV_CAP).unwrap();
        assert_eq!(r.minors, 5);
        assert!(r.all_nonzero);
        let r = chebotarev_minor_check(3, DEFAULT_CHEBOTAREV_CAP).unwrap();
        assert_eq!(r.minors, 19);
        assert!(r.all_nonzero);
        assert!(matches!(chebotarev_minor_check(11, 7), Err(Error::CapExceeded { .. })));
    }
}
