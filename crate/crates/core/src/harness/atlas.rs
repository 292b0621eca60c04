use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::character::homs_to_units;
use crate::error::{Error, Result};
use crate::field::{Field, FieldValue};
use crate::fourier::{abelian_characters, build_dual_set, fourier_transform, DualSet};
use crate::function::FunctionOnX;
use crate::group::Group;
use crate::gset::GSet;
use crate::linalg;
use crate::uncertainty::donoho_stark_with;

/// Brute force is used when `q^|G|` is at most this.
const BRUTE_FORCE_LIMIT: u64 = 500_000;

/// Equality functions of `|supp f|·|supp f̂| ≥ |G|` against the family
/// `c·χ·I_{γH}`, each side as a set of normalized value vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AtlasReport {
    pub group: String,
    pub field: String,
    pub family: usize,
    pub equality: usize,
    pub support_pairs: usize,
    pub brute_force: Option<usize>,
    pub discrepancies: Vec<String>,
}

impl AtlasReport {
    pub fn is_clean(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

fn key(f: &FunctionOnX) -> Vec<String> {
    let n = f.normalized().expect("nonzero");
    n.values().iter().map(|v| f.field().format_value(v)).collect()
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

fn transform_support(f: &FunctionOnX, ds: &DualSet) -> Result<Vec<usize>> {
    let ft = fourier_transform(f, ds)?;
    Ok(ft.blocks().iter().enumerate().filter(|(_, b)| linalg::count_nonzero(ds.field(), b) > 0).map(|(i, _)| i).collect())
}

/// Builds the family, the equality set by nullspace enumeration over
/// support pairs `(S, T)` with `|S|·|T| = |G|`, and, when small enough, the
/// equality set by brute force; all three must agree.
pub fn donoho_stark_atlas(group: Arc<Group>, field: &Field) -> Result<AtlasReport> {
    if !group.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let n = group.order();
    let xs = Arc::new(GSet::regular(group.clone()));
    let bundle = Arc::new(abelian_characters(group.clone(), field)?);
    let ds = build_dual_set(xs.clone(), bundle)?;
    let mut rep = AtlasReport { group: group.name().into(), field: field.spec(), ..Default::default() };

    let mut family = BTreeSet::new();
    let chars = homs_to_units(&group, &group.whole(), field);
    for h in group.all_subgroups()? {
        for coset in group.left_cosets(&h) {
            for chi in &chars {
                let mut values = vec![field.zero(); n];
                for &x in &coset {
                    values[x] = chi.value(x).unwrap().clone();
                }
                let f = FunctionOnX::new(xs.clone(), field.clone(), values)?;
                let ledger = donoho_stark_with(&f, &ds)?;
                if !ledger.classical_equality {
                    rep.discrepancies.push(format!("family member {:?} has product {}", key(&f), ledger.product));
                }
                family.insert(key(&f));
            }
        }
    }
    rep.family = family.len();

    let mut equality = BTreeSet::new();
    for k in (1..=n).filter(|k| n % k == 0) {
        for s in subsets_of_size(n, k) {
            for t in subsets_of_size(n, n / k) {
                rep.support_pairs += 1;
                let mut rows: linalg::Matrix = (0..n)
                    .filter(|x| !s.contains(x))
                    .map(|x| (0..n).map(|y| if x == y { field.one() } else { field.zero() }).collect())
                    .collect();
                for (i, b) in ds.blocks().iter().enumerate() {
                    if !t.contains(&i) {
                        rows.push(b.lambdas[0][0].clone());
                    }
                }
                let null = linalg::nullspace(field, &rows, n);
                if null.len() > 1 {
                    rep.discrepancies.push(format!("S = {s:?}, T = {t:?}: solution space of dimension {}", null.len()));
                }
                for v in null {
                    let f = FunctionOnX::new(xs.clone(), field.clone(), v)?;
                    let ts = transform_support(&f, &ds)?;
                    if f.support() != s || ts != t {
                        rep.discrepancies.push(format!("S = {s:?}, T = {t:?}: solution has supports {:?}, {ts:?}", f.support()));
                    }
                    equality.insert(key(&f));
                }
            }
        }
    }
    rep.equality = equality.len();

    for f in equality.difference(&family) {
        rep.discrepancies.push(format!("equality function {f:?} is not in the family"));
    }
    for f in family.difference(&equality) {
        rep.discrepancies.push(format!("family member {f:?} missed by the enumeration"));
    }

    if let Some(elements) = field.elements() {
        let q = elements.len() as u64;
        if q.checked_pow(n as u32).is_some_and(|t| t <= BRUTE_FORCE_LIMIT) {
            let brute = brute_force(&xs, field, &elements, &ds)?;
            rep.brute_force = Some(brute.len());
            if brute != equality {
                rep.discrepancies.push(format!(
                    "brute force finds {} equality functions, enumeration {}",
                    brute.len(),
                    equality.len()
                ));
            }
        }
    }
    Ok(rep)
}

fn brute_force(xs: &Arc<GSet>, field: &Field, elements: &[FieldValue], ds: &DualSet) -> Result<BTreeSet<Vec<String>>> {
    let q = elements.len() as u64;
    let n = xs.size();
    let mut out = BTreeSet::new();
    for code in 1..q.pow(n as u32) {
        let mut c = code;
        let values: Vec<FieldValue> = (0..n)
            .map(|_| {
                let d = (c % q) as usize;
                c /= q;
                elements[d].clone()
            })
            .collect();
        let lead = values.iter().find(|v| !field.is_zero(v)).unwrap();
        if !field.is_one(lead) {
            continue;
        }
        let f = FunctionOnX::new(xs.clone(), field.clone(), values)?;
        let product = f.support().len() * transform_support(&f, ds)?.len();
        if product < n {
            return Err(Error::InvariantViolation(format!("{:?}: |supp f|·|supp f̂| = {product} < {n}", key(&f))));
        }
        if product == n {
            out.insert(key(&f));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::field_from_spec;

    #[test]
    fn cyclic_atlases() {
        let r = donoho_stark_atlas(Arc::new(Group::cyclic(4)), &field_from_spec("GF(5)").unwrap()).unwrap();
        assert!(r.is_clean(), "{:?}", r.discrepancies);
        // Z4 has subgroups of order 1, 2, 4 with 4, 2, 1 cosets, and each
        // (coset, character of H) pair gives one normalized function.
        assert_eq!(r.family, 4 + 2 * 2 + 4);
        assert_eq!(r.brute_force, Some(r.family));
        let r = donoho_stark_atlas(Arc::new(Group::cyclic(6)), &field_from_spec("GF(7)").unwrap()).unwrap();
        assert!(r.is_clean(), "{:?}", r.discrepancies);
        assert_eq!(r.family, 6 + 3 * 2 + 2 * 3 + 6);
    }
}
