//! Finite left G-sets and the combinatorics of point and group subsets:
//! stabilizers, lifts `ζ⁻¹(Y)`, x₀-closed sets and blocks.
//!
//! Point subsets and group subsets are sorted, duplicate-free `Vec<usize>`.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{input, violation, Error, Result};
use crate::group::{Group, Subgroup};

pub fn sorted(it: impl IntoIterator<Item = usize>) -> Vec<usize> {
    it.into_iter().collect::<BTreeSet<_>>().into_iter().collect()
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

/// How to build an action of a given group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ActionSpec {
    /// `X = G` with left multiplication.
    Regular,
    /// The defining action of a permutation group.
    Natural,
    /// Left cosets of the given subgroup.
    Coset { subgroup: Vec<usize> },
    /// Explicit `n × m` table, `table[α][x] = αx`.
    Table { table: Vec<Vec<usize>> },
}

#[derive(Clone, PartialEq, Eq)]
pub struct GSet {
    group: Arc<Group>,
    label: String,
    action: Vec<Vec<usize>>,
    transitive: bool,
}

impl std::fmt::Debug for GSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GSet({} on {} points, {})", self.group.name(), self.size(), self.label)
    }
}

/// Outcome of the three x₀-closure criteria, evaluated independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClosureVerdict {
    /// `ζ⁻¹(ζ(𝒜)) = 𝒜`.
    pub full_preimage: bool,
    /// `𝒜·G_{x₀} = 𝒜`.
    pub stable_under_stabilizer: bool,
    /// `|𝒜| = k·|𝒜x₀|`.
    pub counting: bool,
}

impl ClosureVerdict {
    pub fn closed(&self) -> bool {
        self.full_preimage
    }
}

/// `X = 𝒮′⁻¹S ⊔ X_S`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverReport {
    pub complement_image: Vec<usize>,
    pub block: Vec<usize>,
}

impl GSet {
    /// Validates identity, compatibility `(αβ)x = α(βx)` and bijectivity.
    pub fn from_table(group: Arc<Group>, table: Vec<Vec<usize>>, label: impl Into<String>) -> Result<Self> {
        let n = group.order();
        if table.len() != n {
            return Err(Error::ActionAxiomViolation(format!("{} rows for a group of order {n}", table.len())));
        }
        let m = table[0].len();
        if m == 0 {
            return Err(Error::ActionAxiomViolation("empty point set".into()));
        }
        for (a, row) in table.iter().enumerate() {
            let mut seen = vec![false; m];
            if row.len() != m || !row.iter().all(|&x| x < m && !std::mem::replace(&mut seen[x], true)) {
                return Err(Error::ActionAxiomViolation(format!("element {a} does not act bijectively")));
            }
        }
        if table[group.identity()].iter().enumerate().any(|(x, &y)| x != y) {
            return Err(Error::ActionAxiomViolation("identity moves a point".into()));
        }
        for a in 0..n {
            for b in 0..n {
                let ab = group.mul(a, b);
                if (0..m).any(|x| table[ab][x] != table[a][table[b][x]]) {
                    return Err(Error::ActionAxiomViolation(format!("(αβ)x ≠ α(βx) for α={a}, β={b}")));
                }
            }
        }
        let mut xs = GSet { group, label: label.into(), action: table, transitive: false };
        xs.transitive = xs.orbit(0).len() == m;
        Ok(xs)
    }

    pub fn build(group: Arc<Group>, spec: &ActionSpec) -> Result<Self> {
        match spec {
            ActionSpec::Regular => Ok(GSet::regular(group)),
            ActionSpec::Natural => GSet::natural(group),
            ActionSpec::Coset { subgroup } => {
                let h = group.subgroup(subgroup)?;
                Ok(coset_action(group, &h))
            }
            ActionSpec::Table { table } => GSet::from_table(group, table.clone(), "table"),
        }
    }

    pub fn regular(group: Arc<Group>) -> Self {
        let table = group.cayley().to_vec();
        GSet::from_table(group, table, "regular").expect("left multiplication is an action")
    }

    pub fn natural(group: Arc<Group>) -> Result<Self> {
        let table: Vec<Vec<usize>> = match group.degree() {
            Some(_) => group.elements().map(|a| group.permutation(a).unwrap().to_vec()).collect(),
            None => return input(format!("{} has no natural action", group.name())),
        };
        GSet::from_table(group, table, "natural")
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn size(&self) -> usize {
        self.action[0].len()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.action
    }

    #[inline]
    pub fn act(&self, a: usize, x: usize) -> usize {
        self.action[a][x]
    }

    pub fn is_transitive(&self) -> bool {
        self.transitive
    }

    /// True when this is the left regular action of its group.
    pub fn is_regular(&self) -> bool {
        self.action.as_slice() == self.group.cayley()
    }

    pub fn points(&self) -> std::ops::Range<usize> {
        0..self.size()
    }

    pub fn orbit(&self, x: usize) -> Vec<usize> {
        sorted(self.group.elements().map(|a| self.act(a, x)))
    }

    pub fn require_transitive(&self) -> Result<()> {
        if self.transitive {
            Ok(())
        } else {
            Err(Error::NotTransitive)
        }
    }

    fn check_points(&self, s: &[usize]) -> Result<()> {
        match s.iter().find(|&&x| x >= self.size()) {
            Some(x) => input(format!("point {x} out of range for {} points", self.size())),
            None => Ok(()),
        }
    }

    /// `αS`.
    pub fn translate_set(&self, a: usize, s: &[usize]) -> Vec<usize> {
        sorted(s.iter().map(|&x| self.act(a, x)))
    }

    /// `𝒜Y = {αy}`.
    pub fn image(&self, a: &[usize], y: &[usize]) -> Vec<usize> {
        sorted(a.iter().flat_map(|&g| y.iter().map(move |&x| self.act(g, x))))
    }

    pub fn point_stabilizer(&self, x0: usize) -> Result<Subgroup> {
        self.require_transitive()?;
        self.check_points(&[x0])?;
        let elems: Vec<usize> = self.group.elements().filter(|&a| self.act(a, x0) == x0).collect();
        let h = self.group.subgroup(&elems)?;
        if h.len() * self.size() != self.group.order() {
            return violation("|G| ≠ |G_x0|·|X|");
        }
        Ok(h)
    }

    /// `ζ⁻¹(Y) = {α : αx₀ ∈ Y}`.
    pub fn zeta_preimage(&self, x0: usize, y: &[usize]) -> Result<Vec<usize>> {
        self.require_transitive()?;
        self.check_points(y)?;
        self.check_points(&[x0])?;
        let y = sorted(y.iter().copied());
        let pre: Vec<usize> = self.group.elements().filter(|&a| y.binary_search(&self.act(a, x0)).is_ok()).collect();
        let k = self.group.order() / self.size();
        if pre.len() != k * y.len() {
            return violation("|ζ⁻¹(Y)| ≠ k·|Y|");
        }
        Ok(pre)
    }

    /// Evaluates all three closure criteria and fails if they disagree.
    pub fn is_x0_closed(&self, x0: usize, a: &[usize]) -> Result<ClosureVerdict> {
        self.require_transitive()?;
        let a = sorted(a.iter().copied());
        let image = self.image(&a, &[x0]);
        let full_preimage = self.zeta_preimage(x0, &image)? == a;
        let stab = self.point_stabilizer(x0)?;
        let right = sorted(a.iter().flat_map(|&g| stab.elements().iter().map(move |&h| self.group.mul(g, h))));
        let stable_under_stabilizer = right == a;
        let counting = a.len() == stab.len() * image.len();
        let v = ClosureVerdict { full_preimage, stable_under_stabilizer, counting };
        if full_preimage != stable_under_stabilizer || full_preimage != counting {
            return violation(format!("closure criteria disagree: {v:?}"));
        }
        Ok(v)
    }

    /// `X_S = G_𝒮·x₀` for `𝒮 = ζ⁻¹(S)`, cross-checked against the direct
    /// intersection `⋂_{α∈𝒮} α⁻¹S`, the block property and `|G_𝒮| = k|X_S|`.
    pub fn associated_block(&self, x0: usize, s: &[usize]) -> Result<Vec<usize>> {
        self.require_transitive()?;
        let s = sorted(s.iter().copied());
        self.check_points(&s)?;
        if s.binary_search(&x0).is_err() {
            return input(format!("x0 = {x0} is not in S"));
        }
        let lift = self.zeta_preimage(x0, &s)?;
        let gs = right_stabilizer(&self.group, &lift)?;
        let block = self.image(gs.elements(), &[x0]);
        let mut inter: Vec<usize> = self.points().collect();
        for &a in &lift {
            let back = self.translate_set(self.group.inv(a), &s);
            inter.retain(|x| back.binary_search(x).is_ok());
        }
        if inter != block {
            return violation(format!("X_S = {block:?} but ⋂ α⁻¹S = {inter:?}"));
        }
        let k = self.group.order() / self.size();
        if gs.len() != k * block.len() {
            return violation("|G_𝒮| ≠ k·|X_S|");
        }
        if !self.is_block(&block)? {
            return violation(format!("X_S = {block:?} is not a block"));
        }
        Ok(block)
    }

    /// `αB ∩ B ∈ {B, ∅}` for all α, cross-checked with "ζ⁻¹(B) is a
    /// subgroup" taken at `x₀ = min B`.
    pub fn is_block(&self, b: &[usize]) -> Result<bool> {
        self.require_transitive()?;
        let b = sorted(b.iter().copied());
        self.check_points(&b)?;
        if b.is_empty() {
            return input("empty block candidate");
        }
        let direct = self.group.elements().all(|a| {
            let ab = self.translate_set(a, &b);
            let meet = ab.iter().filter(|x| b.binary_search(x).is_ok()).count();
            meet == 0 || meet == b.len()
        });
        let lift = self.zeta_preimage(b[0], &b)?;
        let via_subgroup = self.group.is_subgroup(&lift)?;
        if direct != via_subgroup {
            return violation(format!("block criteria disagree on {b:?}"));
        }
        Ok(direct)
    }

    /// `S = γ₁X_S ⊔ … ⊔ γ_ℓX_S`, each γ the smallest element index giving
    /// its translate; translates sorted by their points.
    pub fn block_decomposition(&self, x0: usize, s: &[usize]) -> Result<Vec<(usize, Vec<usize>)>> {
        let s = sorted(s.iter().copied());
        let block = self.associated_block(x0, &s)?;
        let mut parts: Vec<(usize, Vec<usize>)> = Vec::new();
        for a in self.group.elements() {
            let t = self.translate_set(a, &block);
            if is_subset(&t, &s) && !parts.iter().any(|(_, p)| *p == t) {
                parts.push((a, t));
            }
        }
        parts.sort_by(|x, y| x.1.cmp(&y.1));
        let covered = sorted(parts.iter().flat_map(|(_, p)| p.iter().copied()));
        let total: usize = parts.iter().map(|(_, p)| p.len()).sum();
        if covered != s || total != s.len() || parts.len() * block.len() != s.len() {
            return violation(format!("translates of {block:?} do not partition {s:?}"));
        }
        Ok(parts)
    }

    /// Computes `𝒮′⁻¹S` and `X_S` independently and checks they partition X.
    pub fn complement_cover_check(&self, x0: usize, s: &[usize]) -> Result<CoverReport> {
        let s = sorted(s.iter().copied());
        if s.is_empty() || s.len() >= self.size() {
            return input("need ∅ ≠ S ⊊ X");
        }
        let lift = self.zeta_preimage(x0, &s)?;
        let comp_inv: Vec<usize> = self
            .group
            .elements()
            .filter(|a| lift.binary_search(a).is_err())
            .map(|a| self.group.inv(a))
            .collect();
        let complement_image = self.image(&comp_inv, &s);
        let block = self.associated_block(x0, &s)?;
        let disjoint = block.iter().all(|x| complement_image.binary_search(x).is_err());
        let union = sorted(block.iter().chain(&complement_image).copied());
        if !disjoint || union.len() != self.size() {
            return violation(format!("𝒮′⁻¹S = {complement_image:?} and X_S = {block:?} do not partition X"));
        }
        Ok(CoverReport { complement_image, block })
    }
}

/// `G_𝒮 = {α : 𝒮α = 𝒮}`.
pub fn right_stabilizer(group: &Group, s: &[usize]) -> Result<Subgroup> {
    if s.is_empty() {
        return input("right stabilizer of the empty set");
    }
    let s = sorted(s.iter().copied());
    let elems: Vec<usize> = group
        .elements()
        .filter(|&a| sorted(s.iter().map(|&x| group.mul(x, a))) == s)
        .collect();
    group.subgroup(&elems)
}

/// Action of `G` on the left cosets `G/H`, points in [`Group::left_cosets`]
/// order.
pub fn coset_action(group: Arc<Group>, h: &Subgroup) -> GSet {
    let cosets = group.left_cosets(h);
    let mut which = vec![0; group.order()];
    for (i, c) in cosets.iter().enumerate() {
        for &x in c {
            which[x] = i;
        }
    }
    let table = group
        .elements()
        .map(|a| cosets.iter().map(|c| which[group.mul(a, c[0])]).collect())
        .collect();
    let label = format!("G/{:?}", h.elements());
    GSet::from_table(group, table, label).expect("coset action is an action")
}

/// Bijection `φ` with `φ(αx) = αφ(x)` between transitive G-sets of the same
/// group, found by matching the orbit of point 0.
pub fn equivariant_isomorphism(a: &GSet, b: &GSet) -> Option<Vec<usize>> {
    if a.size() != b.size() || a.group() != b.group() || !a.is_transitive() || !b.is_transitive() {
        return None;
    }
    let g = a.group();
    'target: for y in b.points() {
        let mut phi = vec![usize::MAX; a.size()];
        for al in g.elements() {
            let (x, z) = (a.act(al, 0), b.act(al, y));
            if phi[x] == usize::MAX {
                phi[x] = z;
            } else if phi[x] != z {
                continue 'target;
            }
        }
        if sorted(phi.iter().copied()).len() == a.size() {
            return Some(phi);
        }
    }
    None
}

/// One transitive G-set per equivariant isomorphism class, as coset actions
/// of the subgroups in [`Group::all_subgroups`] order.
pub fn transitive_actions(group: Arc<Group>) -> Result<Vec<GSet>> {
    let mut out: Vec<GSet> = Vec::new();
    for h in group.all_subgroups()? {
        let xs = coset_action(group.clone(), &h);
        if !out.iter().any(|o| equivariant_isomorphism(o, &xs).is_some()) {
            out.push(xs);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3_natural() -> GSet {
        GSet::natural(Arc::new(Group::symmetric3())).unwrap()
    }

    fn els(g: &Group, cycles: &[&str]) -> Vec<usize> {
        sorted(cycles.iter().map(|c| g.element_from_cycles(c).unwrap()))
    }

    #[test]
    fn worked_example_structure() {
        let xs = s3_natural();
        let g = xs.group().clone();
        assert!(xs.is_transitive());
        assert_eq!(xs.point_stabilizer(0).unwrap().elements(), els(&g, &["(1)", "(23)"]));
        let lift = xs.zeta_preimage(0, &[0, 1]).unwrap();
        assert_eq!(lift, els(&g, &["(1)", "(23)", "(12)", "(123)"]));
        assert_eq!(right_stabilizer(&g, &lift).unwrap().elements(), els(&g, &["(1)", "(23)"]));
        assert!(xs.is_x0_closed(0, &lift).unwrap().closed());
        assert!(!xs.is_x0_closed(0, &[g.identity()]).unwrap().closed());
        assert_eq!(xs.associated_block(0, &[0, 1]).unwrap(), vec![0]);
        let dec = xs.block_decomposition(0, &[0, 1]).unwrap();
        assert_eq!(dec.iter().map(|(_, p)| p.clone()).collect::<Vec<_>>(), vec![vec![0], vec![1]]);
        let cover = xs.complement_cover_check(0, &[0, 1]).unwrap();
        assert_eq!(cover.complement_image, vec![1, 2]);
        assert_eq!(cover.block, vec![0]);
        assert!(!xs.is_block(&[0, 1]).unwrap());
        assert!(xs.is_block(&[2]).unwrap());
    }

    #[test]
    fn trivial_cases() {
        let xs = s3_natural();
        let g = xs.group().clone();
        let all: Vec<usize> = g.elements().collect();
        assert_eq!(xs.zeta_preimage(0, &[0, 1, 2]).unwrap(), all);
        assert!(xs.zeta_preimage(0, &[]).unwrap().is_empty());
        assert!(xs.is_x0_closed(0, &all).unwrap().closed());
        assert_eq!(right_stabilizer(&g, &all).unwrap().elements(), all);
        assert_eq!(right_stabilizer(&g, &[g.identity()]).unwrap().elements(), [g.identity()]);
        assert_eq!(xs.associated_block(0, &[0, 1, 2]).unwrap(), vec![0, 1, 2]);
        assert!(matches!(xs.associated_block(2, &[0, 1]), Err(Error::InputError(_))));
        let reg = GSet::regular(Arc::new(Group::cyclic(5)));
        assert!(reg.is_transitive());
        assert_eq!(reg.point_stabilizer(3).unwrap().elements(), [0]);
    }

    #[test]
    fn cyclic_examples() {
        let z6 = Arc::new(Group::cyclic(6));
        let reg = GSet::regular(z6.clone());
        assert_eq!(reg.associated_block(0, &[0, 3]).unwrap(), vec![0, 3]);
        let dec = reg.block_decomposition(0, &[0, 1, 3, 4]).unwrap();
        assert_eq!(dec, vec![(0, vec![0, 3]), (1, vec![1, 4])]);
        let h = z6.subgroup(&[0, 3]).unwrap();
        let quo = coset_action(z6.clone(), &h);
        assert_eq!(quo.size(), 3);
        assert_eq!(quo.point_stabilizer(0).unwrap().elements(), [0, 3]);
        let z4 = GSet::regular(Arc::new(Group::cyclic(4)));
        assert!(z4.is_block(&[0, 2]).unwrap());
        assert!(!z4.is_block(&[0, 1]).unwrap());
        let c = z4.complement_cover_check(0, &[0]).unwrap();
        assert_eq!((c.complement_image, c.block), (vec![1, 2, 3], vec![0]));
        let z2 = GSet::regular(Arc::new(Group::cyclic(2)));
        let c = z2.complement_cover_check(0, &[0]).unwrap();
        assert_eq!((c.complement_image, c.block), (vec![1], vec![0]));
    }

    #[test]
    fn coset_action_matches_natural_action() {
        let xs = s3_natural();
        let g = xs.group_arc().clone();
        let h = xs.point_stabilizer(0).unwrap();
        let cos = coset_action(g.clone(), &h);
        assert!(equivariant_isomorphism(&cos, &xs).is_some());
        assert_eq!(coset_action(g.clone(), &g.whole()).size(), 1);
        let reg = coset_action(g.clone(), &g.trivial());
        assert!(equivariant_isomorphism(&reg, &GSet::regular(g.clone())).is_some());
        assert_eq!(transitive_actions(g).unwrap().len(), 4);
    }

    #[test]
    fn bad_tables() {
        let g = Arc::new(Group::cyclic(2));
        assert!(matches!(
            GSet::from_table(g.clone(), vec![vec![0, 1], vec![0, 0]], "t"),
            Err(Error::ActionAxiomViolation(_))
        ));
        assert!(matches!(
            GSet::from_table(g.clone(), vec![vec![1, 0], vec![0, 1]], "t"),
            Err(Error::ActionAxiomViolation(_))
        ));
        let two_orbits = GSet::from_table(g, vec![vec![0, 1, 2], vec![1, 0, 2]], "t").unwrap();
        assert!(!two_orbits.is_transitive());
        assert!(matches!(two_orbits.point_stabilizer(0), Err(Error::NotTransitive)));
    }

    #[test]
    fn action_spec_json() {
        let s: ActionSpec = serde_json::from_str(r#"{"kind":"coset","subgroup":[0,3]}"#).unwrap();
        assert_eq!(s, ActionSpec::Coset { subgroup: vec![0, 3] });
        let r: ActionSpec = serde_json::from_str(r#"{"kind":"regular"}"#).unwrap();
        assert_eq!(r, ActionSpec::Regular);
    }
}
