//! Functions `X → 𝔽`, read as elements of the permutation module 𝔽X.

use std::sync::Arc;

use crate::character::Character;
use crate::error::{input, Error, Result};
use crate::field::{Field, FieldValue};
use crate::gset::{sorted, GSet};
use crate::linalg::{self, Matrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionOnX {
    gset: Arc<GSet>,
    field: Field,
    values: Vec<FieldValue>,
}

/// Result of a G-linearity test: `αf = η(α)f` on the tested subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Linearity {
    pub character: Character,
    /// On the regular set: `(c, η⁻¹)` with `f = c·η⁻¹` on the domain,
    /// `c = f(1_G)`.
    pub regular_form: Option<(FieldValue, Character)>,
}

impl FunctionOnX {
    pub fn new(gset: Arc<GSet>, field: Field, values: Vec<FieldValue>) -> Result<Self> {
        if values.len() != gset.size() {
            return input(format!("{} values for {} points", values.len(), gset.size()));
        }
        let values = values.into_iter().map(|v| field.canonicalize(v)).collect::<Result<_>>()?;
        Ok(FunctionOnX { gset, field, values })
    }

    pub fn from_i64(gset: Arc<GSet>, field: Field, values: &[i64]) -> Result<Self> {
        let vals = values.iter().map(|&v| field.from_i64(v)).collect();
        FunctionOnX::new(gset, field, vals)
    }

    pub fn zero(gset: Arc<GSet>, field: Field) -> Self {
        let values = vec![field.zero(); gset.size()];
        FunctionOnX { gset, field, values }
    }

    pub fn delta(gset: Arc<GSet>, field: Field, x: usize) -> Self {
        let mut f = FunctionOnX::zero(gset, field);
        f.values[x] = f.field.one();
        f
    }

    pub fn gset(&self) -> &Arc<GSet> {
        &self.gset
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn values(&self) -> &[FieldValue] {
        &self.values
    }

    pub fn value(&self, x: usize) -> &FieldValue {
        &self.values[x]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| self.field.is_zero(v))
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&x| !self.field.is_zero(&self.values[x])).collect()
    }

    /// `(αf)(x) = f(α⁻¹x)`.
    pub fn translate(&self, a: usize) -> FunctionOnX {
        let ainv = self.gset.group().inv(a);
        let values = (0..self.values.len()).map(|x| self.values[self.gset.act(ainv, x)].clone()).collect();
        FunctionOnX { gset: self.gset.clone(), field: self.field.clone(), values }
    }

    pub fn scale(&self, c: &FieldValue) -> FunctionOnX {
        let values = self.values.iter().map(|v| self.field.mul(c, v)).collect();
        FunctionOnX { gset: self.gset.clone(), field: self.field.clone(), values }
    }

    pub fn add(&self, other: &FunctionOnX) -> Result<FunctionOnX> {
        self.same_context(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| self.field.add(a, b)).collect();
        Ok(FunctionOnX { gset: self.gset.clone(), field: self.field.clone(), values })
    }

    fn same_context(&self, other: &FunctionOnX) -> Result<()> {
        if self.field != other.field || *self.gset != *other.gset {
            return Err(Error::MismatchedContext(format!(
                "{:?} over {} vs {:?} over {}",
                self.gset, self.field, other.gset, other.field
            )));
        }
        Ok(())
    }

    /// Same values over a larger field.
    pub fn embed(&self, target: &Field) -> Result<FunctionOnX> {
        let values = self.values.iter().map(|v| target.embed(&self.field, v)).collect::<Result<_>>()?;
        Ok(FunctionOnX { gset: self.gset.clone(), field: target.clone(), values })
    }

    /// Rescaled so the first nonzero value is 1.
    pub fn normalized(&self) -> Result<FunctionOnX> {
        let lead = self.values.iter().find(|v| !self.field.is_zero(v)).ok_or(Error::ZeroFunction)?;
        Ok(self.scale(&self.field.inv(lead).expect("nonzero")))
    }
}

/// `(g*h)(α) = Σ_β g(β)h(β⁻¹α)` in 𝔽G.
pub fn convolve_group(g: &FunctionOnX, h: &FunctionOnX) -> Result<FunctionOnX> {
    if !g.gset.is_regular() {
        return Err(Error::MismatchedContext("convolution needs the regular set".into()));
    }
    g.same_context(h)?;
    convolve_action(g, h)
}

/// `(g*f)(x) = Σ_α g(α)f(α⁻¹x)`: the module action of `Σ g(α)α` on `f`.
pub fn convolve_action(g: &FunctionOnX, f: &FunctionOnX) -> Result<FunctionOnX> {
    if !g.gset.is_regular() || g.gset.group() != f.gset.group() || g.field != f.field {
        return Err(Error::MismatchedContext("g must live on the regular set of f's group over f's field".into()));
    }
    let field = &f.field;
    let mut acc = FunctionOnX::zero(f.gset.clone(), field.clone());
    for (a, ga) in g.values.iter().enumerate() {
        if field.is_zero(ga) {
            continue;
        }
        acc = acc.add(&f.translate(a).scale(ga))?;
    }
    Ok(acc)
}

/// Row `α` holds the values of `αf`.
pub fn translate_matrix(f: &FunctionOnX) -> Matrix {
    f.gset.group().elements().map(|a| f.translate(a).values).collect()
}

pub fn exact_rank(field: &Field, m: &Matrix) -> usize {
    linalg::exact_rank(field, m)
}

/// `dim 𝔽Gf`, the rank of the translate matrix.
pub fn dim_fgf(f: &FunctionOnX) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    Ok(exact_rank(&f.field, &translate_matrix(f)))
}

/// If `αf = c_α f` for every α in `domain`, and `domain` is a subgroup,
/// the character `α ↦ c_α`.
pub fn is_g_linear(f: &FunctionOnX, domain: &[usize]) -> Result<Option<Linearity>> {
    let x = *f.support().first().ok_or(Error::ZeroFunction)?;
    let field = &f.field;
    let group = f.gset.group();
    let domain = sorted(domain.iter().copied());
    let supp = f.support();
    let mut coeffs = Vec::with_capacity(domain.len());
    for &a in &domain {
        if f.gset.translate_set(a, &supp) != supp {
            return Ok(None);
        }
        let t = f.translate(a);
        let c = field.div(t.value(x), f.value(x));
        if t != f.scale(&c) {
            return Ok(None);
        }
        coeffs.push(c);
    }
    if !group.is_subgroup(&domain)? {
        return Ok(None);
    }
    let sub = group.subgroup(&domain)?;
    let character = Character::new(group, field, &sub, coeffs)?;
    let regular_form = if f.gset.is_regular() {
        let eta_inv = character.inverse();
        let c = f.value(group.identity()).clone();
        let holds = domain.iter().all(|&b| *f.value(b) == field.mul(&c, eta_inv.value(b).unwrap()));
        holds.then_some((c, eta_inv))
    } else {
        None
    };
    Ok(Some(Linearity { character, regular_form }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character::homs_to_units;
    use crate::field::field_from_spec;
    use crate::group::Group;

    fn remark_f() -> FunctionOnX {
        let xs = Arc::new(GSet::natural(Arc::new(Group::symmetric3())).unwrap());
        FunctionOnX::from_i64(xs, field_from_spec("Q").unwrap(), &[1, -1, 0]).unwrap()
    }

    fn ints(f: &FunctionOnX) -> Vec<i64> {
        f.values().iter().map(|v| f.field().format_value(v).parse().unwrap()).collect()
    }

    #[test]
    fn worked_example_translates() {
        let f = remark_f();
        let g = f.gset().group().clone();
        assert_eq!(f.support(), vec![0, 1]);
        let table = [
            ("(1)", [1, -1, 0]),
            ("(12)", [-1, 1, 0]),
            ("(13)", [0, -1, 1]),
            ("(123)", [0, 1, -1]),
            ("(23)", [1, 0, -1]),
            ("(132)", [-1, 0, 1]),
        ];
        for (c, want) in table {
            assert_eq!(ints(&f.translate(g.element_from_cycles(c).unwrap())), want, "{c}");
        }
        assert_eq!(dim_fgf(&f).unwrap(), 2);
        let m = translate_matrix(&f);
        assert_eq!(m.len(), 6);
        assert_eq!(m[g.identity()], f.values());
    }

    #[test]
    fn convolution_examples() {
        let f = remark_f();
        let g = f.gset().group().clone();
        let reg = Arc::new(GSet::regular(Arc::new(g.clone())));
        let q = f.field().clone();
        let mut w = FunctionOnX::zero(reg.clone(), q.clone());
        for c in ["(12)", "(13)"] {
            w = w.add(&FunctionOnX::delta(reg.clone(), q.clone(), g.element_from_cycles(c).unwrap())).unwrap();
        }
        assert_eq!(ints(&convolve_action(&w, &f).unwrap()), [-1, 0, 1]);
        let d = FunctionOnX::delta(reg.clone(), q.clone(), 2);
        assert_eq!(convolve_action(&d, &f).unwrap(), f.translate(2));
        let ones_g = FunctionOnX::from_i64(reg.clone(), q.clone(), &[1; 6]).unwrap();
        let ones_x = FunctionOnX::from_i64(f.gset().clone(), q.clone(), &[1; 3]).unwrap();
        assert_eq!(ints(&convolve_action(&ones_g, &ones_x).unwrap()), [6, 6, 6]);
        for a in g.elements() {
            for b in g.elements() {
                let da = FunctionOnX::delta(reg.clone(), q.clone(), a);
                let db = FunctionOnX::delta(reg.clone(), q.clone(), b);
                let want = FunctionOnX::delta(reg.clone(), q.clone(), g.mul(a, b));
                assert_eq!(convolve_group(&da, &db).unwrap(), want);
            }
        }
        assert!(matches!(convolve_group(&ones_x, &ones_x), Err(Error::MismatchedContext(_))));
    }

    #[test]
    fn circulant_square_over_gf2() {
        let reg = Arc::new(GSet::regular(Arc::new(Group::cyclic(4))));
        let f2 = field_from_spec("GF(2)").unwrap();
        let a = FunctionOnX::from_i64(reg, f2, &[1, 1, 0, 0]).unwrap();
        assert_eq!(ints(&convolve_group(&a, &a).unwrap()), [1, 0, 1, 0]);
        assert_eq!(dim_fgf(&a).unwrap(), 3);
    }

    #[test]
    fn dimension_edge_cases() {
        let f = remark_f();
        let z = FunctionOnX::zero(f.gset().clone(), f.field().clone());
        assert!(matches!(dim_fgf(&z), Err(Error::ZeroFunction)));
        assert!(translate_matrix(&z).iter().flatten().all(|v| f.field().is_zero(v)));
        let c = FunctionOnX::from_i64(f.gset().clone(), f.field().clone(), &[5, 5, 5]).unwrap();
        assert_eq!(dim_fgf(&c).unwrap(), 1);
        let reg = Arc::new(GSet::regular(Arc::new(Group::cyclic(2))));
        let d = FunctionOnX::delta(reg, field_from_spec("GF(3)").unwrap(), 0);
        let m = translate_matrix(&d);
        assert_eq!(m, linalg::identity(d.field(), 2));
        assert_eq!(dim_fgf(&d).unwrap(), 2);
    }

    #[test]
    fn linearity() {
        let f = remark_f();
        let g = f.gset().group().clone();
        let lift = sorted(["(1)", "(23)", "(12)", "(123)"].map(|c| g.element_from_cycles(c).unwrap()));
        assert!(is_g_linear(&f, &lift).unwrap().is_none());
        let c = FunctionOnX::from_i64(f.gset().clone(), f.field().clone(), &[2, 2, 2]).unwrap();
        let lin = is_g_linear(&c, &g.elements().collect::<Vec<_>>()).unwrap().unwrap();
        assert!(lin.character.is_trivial());

        let z6 = Arc::new(Group::cyclic(6));
        let reg = Arc::new(GSet::regular(z6.clone()));
        let f7 = field_from_spec("GF(7)").unwrap();
        for chi in homs_to_units(&z6, &z6.whole(), &f7) {
            let fun = FunctionOnX::new(reg.clone(), f7.clone(), chi.values().to_vec()).unwrap();
            let lin = is_g_linear(&fun, &z6.whole().elements().to_vec()).unwrap().unwrap();
            assert_eq!(lin.character, chi.inverse());
            let (c, eta_inv) = lin.regular_form.unwrap();
            assert!(f7.is_one(&c));
            assert_eq!(eta_inv, chi);
        }
    }
}
