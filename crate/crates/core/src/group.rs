//! Finite groups as validated Cayley tables over element indices `0..n`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{input, Error, Result};

pub const DEFAULT_CLOSURE_CAP: usize = 5040;
pub const DEFAULT_SUBGROUP_CAP: usize = 24;

/// On-disk group description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Cayley {
        name: String,
        cayley: Vec<Vec<usize>>,
    },
    Permutations {
        name: String,
        degree: usize,
        permutation_generators: Vec<Vec<usize>>,
    },
}

#[derive(Clone, PartialEq, Eq)]
pub struct Group {
    name: String,
    cayley: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    /// Point images of each element, for groups given by permutations.
    perms: Option<Vec<Vec<usize>>>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({}, order {})", self.name, self.order())
    }
}

fn is_permutation(row: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    row.len() == n
        && row.iter().all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
}

/// `(a ∘ b)(x) = a(b(x))`.
fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

impl Group {
    /// Validates a Cayley table: Latin square, two-sided identity, inverses,
    /// exhaustive associativity.
    pub fn from_cayley(name: impl Into<String>, cayley: Vec<Vec<usize>>) -> Result<Self> {
        let n = cayley.len();
        if n == 0 {
            return Err(Error::AxiomViolation("empty table".into()));
        }
        for (a, row) in cayley.iter().enumerate() {
            if !is_permutation(row, n) {
                return Err(Error::AxiomViolation(format!("row {a} is not a permutation")));
            }
        }
        for b in 0..n {
            let col: Vec<usize> = cayley.iter().map(|row| row[b]).collect();
            if !is_permutation(&col, n) {
                return Err(Error::AxiomViolation(format!("column {b} is not a permutation")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| cayley[e][a] == a && cayley[a][e] == a))
            .ok_or_else(|| Error::AxiomViolation("no two-sided identity".into()))?;
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| cayley[a][b] == identity && cayley[b][a] == identity)
                .ok_or_else(|| Error::AxiomViolation(format!("element {a} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = cayley[a][b];
                for c in 0..n {
                    if cayley[ab][c] != cayley[a][cayley[b][c]] {
                        return Err(Error::AxiomViolation(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(Group { name: name.into(), cayley, identity, inverse, perms: None })
    }

    /// Closes permutation generators breadth-first from the identity. Element
    /// `i·s` is discovered from element `i` for each generator `s` in input
    /// order, and products compose right to left: `(αβ)x = α(βx)`.
    pub fn from_permutations(
        name: impl Into<String>,
        degree: usize,
        generators: &[Vec<usize>],
        cap: usize,
    ) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if !is_permutation(g, degree) {
                return input(format!("generator {i} is not a permutation of 0..{degree}"));
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(h) = queue.pop_front() {
            for s in generators {
                let cand = compose(&elems[h], s);
                if !index.contains_key(&cand) {
                    if elems.len() >= cap {
                        return Err(Error::NotClosed { cap });
                    }
                    index.insert(cand.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(cand);
                }
            }
        }
        let cayley = elems
            .iter()
            .map(|a| elems.iter().map(|b| index[&compose(a, b)]).collect())
            .collect();
        let mut g = Group::from_cayley(name, cayley)?;
        g.perms = Some(elems);
        Ok(g)
    }

    pub fn load(spec: &GroupSpec) -> Result<Self> {
        Self::load_with_cap(spec, DEFAULT_CLOSURE_CAP)
    }

    pub fn load_with_cap(spec: &GroupSpec, cap: usize) -> Result<Self> {
        match spec {
            GroupSpec::Cayley { name, cayley } => Group::from_cayley(name.clone(), cayley.clone()),
            GroupSpec::Permutations { name, degree, permutation_generators } => {
                Group::from_permutations(name.clone(), *degree, permutation_generators, cap)
            }
        }
    }

    /// Cayley-table form; permutation groups keep their generators.
    pub fn to_spec(&self) -> GroupSpec {
        GroupSpec::Cayley { name: self.name.clone(), cayley: self.cayley.clone() }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.cayley.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn cayley(&self) -> &[Vec<usize>] {
        &self.cayley
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a][b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn permutation(&self, a: usize) -> Option<&[usize]> {
        self.perms.as_ref().map(|p| p[a].as_slice())
    }

    pub fn degree(&self) -> Option<usize> {
        self.perms.as_ref().map(|p| p[0].len())
    }

    pub fn find_permutation(&self, images: &[usize]) -> Option<usize> {
        self.perms.as_ref()?.iter().position(|p| p == images)
    }

    /// Looks up a permutation element by 1-based cycle notation such as
    /// `"(1)"`, `"(12)"`, `"(123)"` or `"(1,2)(3,4)"`.
    pub fn element_from_cycles(&self, cycles: &str) -> Option<usize> {
        let deg = self.degree()?;
        let mut img: Vec<usize> = (0..deg).collect();
        for cyc in cycles.split(')').map(str::trim).filter(|c| !c.is_empty()) {
            let body = cyc.strip_prefix('(')?;
            let pts: Vec<usize> = if body.contains(',') || body.contains(' ') {
                body.split([',', ' ']).filter(|s| !s.is_empty()).map(|s| s.parse().ok()).collect::<Option<_>>()?
            } else {
                body.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect::<Option<_>>()?
            };
            if pts.iter().any(|&p| p == 0 || p > deg) {
                return None;
            }
            for w in 0..pts.len() {
                img[pts[w] - 1] = pts[(w + 1) % pts.len()] - 1;
            }
        }
        self.find_permutation(&img)
    }

    /// Paper-style label: cycle notation for permutation groups, index
    /// otherwise.
    pub fn label(&self, a: usize) -> String {
        let Some(p) = self.permutation(a) else {
            return format!("g{a}");
        };
        let mut seen = vec![false; p.len()];
        let mut out = String::new();
        for start in 0..p.len() {
            if seen[start] || p[start] == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push((x + 1).to_string());
                x = p[x];
            }
            let sep = if p.len() >= 10 { "," } else { "" };
            out.push_str(&format!("({})", cyc.join(sep)));
        }
        if out.is_empty() {
            "(1)".into()
        } else {
            out
        }
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// lcm of element orders.
    pub fn exponent(&self) -> u64 {
        self.elements().fold(1, |acc, a| arith::lcm(acc, self.element_order(a)))
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Sorted subgroup generated by `gens` (the trivial group when empty).
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut set = BTreeSet::from([self.identity]);
        let mut frontier = vec![self.identity];
        while let Some(h) = frontier.pop() {
            for &s in gens {
                let x = self.mul(h, s);
                if set.insert(x) {
                    frontier.push(x);
                }
            }
        }
        set.into_iter().collect()
    }

    fn check_indices(&self, subset: &[usize]) -> Result<()> {
        match subset.iter().find(|&&a| a >= self.order()) {
            Some(a) => input(format!("element index {a} out of range for order {}", self.order())),
            None => Ok(()),
        }
    }

    /// True iff the subset contains the identity and is closed under
    /// products and inverses.
    pub fn is_subgroup(&self, subset: &[usize]) -> Result<bool> {
        self.check_indices(subset)?;
        if subset.is_empty() {
            return input("empty subset");
        }
        let set: BTreeSet<usize> = subset.iter().copied().collect();
        Ok(set.contains(&self.identity)
            && set.iter().all(|&a| set.contains(&self.inv(a)))
            && set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, b)))))
    }

    pub fn subgroup(&self, elements: &[usize]) -> Result<Subgroup> {
        if !self.is_subgroup(elements)? {
            return input(format!("{elements:?} is not a subgroup of {}", self.name));
        }
        let mut e = elements.to_vec();
        e.sort_unstable();
        e.dedup();
        if self.order() % e.len() != 0 {
            return Err(Error::InvariantViolation("Lagrange fails".into()));
        }
        Ok(Subgroup { elements: e })
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { elements: self.elements().collect() }
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup { elements: vec![self.identity] }
    }

    pub fn all_subgroups(&self) -> Result<Vec<Subgroup>> {
        self.all_subgroups_with_cap(DEFAULT_SUBGROUP_CAP)
    }

    /// Every subgroup, sorted by `(size, element set)`: the ≤2-generated
    /// subgroups closed under pairwise joins.
    pub fn all_subgroups_with_cap(&self, cap: usize) -> Result<Vec<Subgroup>> {
        if self.order() > cap {
            return Err(Error::CapExceeded { what: format!("group order {}", self.order()), cap });
        }
        let n = self.order();
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        for a in 0..n {
            for b in a..n {
                found.insert(self.generated(&[a, b]));
            }
        }
        loop {
            let current: Vec<Vec<usize>> = found.iter().cloned().collect();
            let mut grew = false;
            for (i, h) in current.iter().enumerate() {
                for k in &current[i + 1..] {
                    let mut gens = h.clone();
                    gens.extend_from_slice(k);
                    if found.insert(self.generated(&gens)) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let mut subs: Vec<Subgroup> = found.into_iter().map(|elements| Subgroup { elements }).collect();
        subs.sort_by(|a, b| (a.len(), &a.elements).cmp(&(b.len(), &b.elements)));
        Ok(subs)
    }

    /// Left cosets `γH`, each sorted, ordered by minimal representative.
    pub fn left_cosets(&self, h: &Subgroup) -> Vec<Vec<usize>> {
        let mut covered = vec![false; self.order()];
        let mut out = Vec::new();
        for g in self.elements() {
            if covered[g] {
                continue;
            }
            let mut coset: Vec<usize> = h.elements.iter().map(|&x| self.mul(g, x)).collect();
            coset.sort_unstable();
            for &x in &coset {
                covered[x] = true;
            }
            out.push(coset);
        }
        out
    }

    /// Are `h` and `k` conjugate subgroups?
    pub fn are_conjugate(&self, h: &Subgroup, k: &Subgroup) -> bool {
        h.len() == k.len()
            && self.elements().any(|g| {
                let gi = self.inv(g);
                h.elements.iter().all(|&x| k.contains(self.mul(self.mul(g, x), gi)))
            })
    }

    pub fn cyclic(n: usize) -> Group {
        assert!(n >= 1);
        let cayley = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Group::from_cayley(format!("Z{n}"), cayley).expect("cyclic table is a group")
    }

    /// Element `(a, b)` has index `a·|B| + b`.
    pub fn direct_product(a: &Group, b: &Group) -> Group {
        let nb = b.order();
        let n = a.order() * nb;
        let cayley = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb))
                    .collect()
            })
            .collect();
        Group::from_cayley(format!("{}x{}", a.name, b.name), cayley).expect("product of groups")
    }

    /// S₃ generated by (12) and (123) on three points.
    pub fn symmetric3() -> Group {
        Group::from_permutations("S3", 3, &[vec![1, 0, 2], vec![1, 2, 0]], DEFAULT_CLOSURE_CAP)
            .expect("S3")
    }

    /// Dihedral group of order `2k` acting on the vertices of a `k`-gon.
    pub fn dihedral(k: usize) -> Group {
        let rot: Vec<usize> = (0..k).map(|i| (i + 1) % k).collect();
        let refl: Vec<usize> = (0..k).map(|i| (k - i) % k).collect();
        Group::from_permutations(format!("D{k}"), k, &[rot, refl], DEFAULT_CLOSURE_CAP)
            .expect("dihedral")
    }

    /// Quaternion group; element `2u + s` is `(−1)^s·u` for `u ∈ {1, i, j, k}`.
    pub fn quaternion8() -> Group {
        // unit product table: (sign, unit)
        const T: [[(usize, usize); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        let cayley = (0..8)
            .map(|x| {
                (0..8)
                    .map(|y| {
                        let (s, u) = T[x / 2][y / 2];
                        2 * u + ((x % 2) ^ (y % 2) ^ s)
                    })
                    .collect()
            })
            .collect();
        Group::from_cayley("Q8", cayley).expect("Q8")
    }

    pub fn symmetric4() -> Group {
        Group::from_permutations("S4", 4, &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]], DEFAULT_CLOSURE_CAP)
            .expect("S4")
    }

    pub fn alternating4() -> Group {
        Group::from_permutations("A4", 4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]], DEFAULT_CLOSURE_CAP)
            .expect("A4")
    }

    /// Built-in groups by name: `Z<n>`, `Z2xZ2`, `Z2xZ4`, `Z2xZ2xZ2`,
    /// `Z3xZ3`, `S3`, `D<k>`, `Q8`, `A4`, `S4`.
    pub fn by_name(name: &str) -> Option<Group> {
        if let Some(parts) = name.split('x').map(cyclic_order).collect::<Option<Vec<_>>>() {
            let mut it = parts.into_iter();
            let first = Group::cyclic(it.next()?);
            let g = it.fold(first, |acc, n| Group::direct_product(&acc, &Group::cyclic(n)));
            return (g.order() <= 4096).then_some(g);
        }
        match name {
            "S3" => Some(Group::symmetric3()),
            "Q8" => Some(Group::quaternion8()),
            "A4" => Some(Group::alternating4()),
            "S4" => Some(Group::symmetric4()),
            _ => {
                let k: usize = name.strip_prefix('D')?.parse().ok()?;
                (3..=12).contains(&k).then(|| Group::dihedral(k))
            }
        }
    }

    /// All fourteen groups of order at most 8, up to isomorphism.
    pub fn small_groups_up_to_8() -> Vec<Group> {
        ["Z1", "Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "S3", "Z7", "Z8", "Z2xZ4", "Z2xZ2xZ2", "D4", "Q8"]
            .iter()
            .map(|n| Group::by_name(n).expect("catalog"))
            .collect()
    }
}

fn cyclic_order(s: &str) -> Option<usize> {
    let n: usize = s.strip_prefix('Z')?.parse().ok()?;
    (n >= 1).then_some(n)
}

/// A validated subgroup, stored as a sorted element list of its parent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.elements.binary_search(&a).is_ok()
    }
}
