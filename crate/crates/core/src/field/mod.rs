//! Exact fields: ℚ, GF(p), GF(p^k) and ℚ(ζ_n).
//!
//! Every backend implements [`FieldBackend`] and is reached through the
//! cheaply clonable [`Field`] handle. Backends are looked up by their spec
//! string (`"Q"`, `"GF(7)"`, `"GF(2^2)"`, `"Q(zeta_3)"`) in a
//! [`FieldRegistry`].

mod cyclotomic;
mod galois;
mod prime;
mod qpoly;
mod rational;
mod registry;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::RngCore;

use crate::arith;
use crate::error::{Error, Result};
use crate::group::Group;

pub use cyclotomic::{cyclotomic_polynomial, CyclotomicField};
pub use galois::GaloisField;
pub use prime::PrimeField;
pub use rational::RationalField;
pub use registry::{field_from_spec, FieldFamily, FieldRegistry};

/// Canonical payload of a field element. Which variant is legal depends on
/// the owning [`Field`]; backends reject foreign payloads in
/// [`FieldBackend::canonicalize`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldValue {
    /// Element of ℚ in lowest terms.
    Rational(BigRational),
    /// Residue in `0..p`.
    Residue(u64),
    /// GF(p^k) element as `k` coefficients, constant term first.
    Poly(Vec<u64>),
    /// ℚ(ζ_n) element as `φ(n)` rational coefficients in the power basis.
    Cyclotomic(Vec<BigRational>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldKind {
    Rationals,
    Prime { p: u64 },
    Galois { p: u64, k: u32, modulus: Vec<u64> },
    Cyclotomic { n: u64, phi: Vec<BigInt> },
}

pub trait FieldBackend: Send + Sync + fmt::Debug {
    /// Canonical spec string; two fields are equal iff their specs are.
    fn spec(&self) -> String;
    fn kind(&self) -> FieldKind;
    fn characteristic(&self) -> u64;
    /// Number of elements, `None` for infinite fields.
    fn size(&self) -> Option<u64>;

    fn zero(&self) -> FieldValue;
    fn one(&self) -> FieldValue;
    fn from_i64(&self, v: i64) -> FieldValue;
    fn is_zero(&self, a: &FieldValue) -> bool;
    fn add(&self, a: &FieldValue, b: &FieldValue) -> FieldValue;
    fn neg(&self, a: &FieldValue) -> FieldValue;
    fn mul(&self, a: &FieldValue, b: &FieldValue) -> FieldValue;
    fn inv(&self, a: &FieldValue) -> Option<FieldValue>;

    /// Validates a payload and returns it in reduced form.
    fn canonicalize(&self, v: FieldValue) -> Result<FieldValue>;
    fn parse_value(&self, v: &serde_json::Value) -> Result<FieldValue>;
    fn value_to_json(&self, v: &FieldValue) -> serde_json::Value;

    /// Order of the (cyclic) group of roots of unity in the field.
    fn roots_of_unity_order(&self) -> u64;
    /// Deterministic primitive `n`-th root of unity.
    fn primitive_root_of_unity(&self, n: u64) -> Result<FieldValue>;

    /// All elements in canonical order, for finite fields.
    fn elements(&self) -> Option<Vec<FieldValue>>;
    fn random_value(&self, rng: &mut dyn RngCore) -> FieldValue;

    /// Image of a value of `from` under the canonical inclusion into `self`.
    fn embed_from(&self, from: &Field, v: &FieldValue) -> Result<FieldValue>;
}

#[derive(Clone)]
pub struct Field(Arc<dyn FieldBackend>);

impl Field {
    pub fn new(backend: impl FieldBackend + 'static) -> Self {
        Field(Arc::new(backend))
    }

    pub fn backend(&self) -> &dyn FieldBackend {
        self.0.as_ref()
    }

    pub fn spec(&self) -> String {
        self.0.spec()
    }

    pub fn kind(&self) -> FieldKind {
        self.0.kind()
    }

    pub fn characteristic(&self) -> u64 {
        self.0.characteristic()
    }

    pub fn size(&self) -> Option<u64> {
        self.0.size()
    }

    pub fn zero(&self) -> FieldValue {
        self.0.zero()
    }

    pub fn one(&self) -> FieldValue {
        self.0.one()
    }

    pub fn from_i64(&self, v: i64) -> FieldValue {
        self.0.from_i64(v)
    }

    pub fn is_zero(&self, a: &FieldValue) -> bool {
        self.0.is_zero(a)
    }

    pub fn is_one(&self, a: &FieldValue) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &FieldValue, b: &FieldValue) -> FieldValue {
        self.0.add(a, b)
    }

    pub fn sub(&self, a: &FieldValue, b: &FieldValue) -> FieldValue {
        self.0.add(a, &self.0.neg(b))
    }

    pub fn neg(&self, a: &FieldValue) -> FieldValue {
        self.0.neg(a)
    }

    pub fn mul(&self, a: &FieldValue, b: &FieldValue) -> FieldValue {
        self.0.mul(a, b)
    }

    pub fn inv(&self, a: &FieldValue) -> Option<FieldValue> {
        self.0.inv(a)
    }

    /// `a / b`; panics on division by zero.
    pub fn div(&self, a: &FieldValue, b: &FieldValue) -> FieldValue {
        let binv = self.inv(b).expect("division by zero");
        self.mul(a, &binv)
    }

    pub fn pow(&self, a: &FieldValue, mut e: u64) -> FieldValue {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn sum<'a>(&self, it: impl IntoIterator<Item = &'a FieldValue>) -> FieldValue {
        it.into_iter().fold(self.zero(), |acc, v| self.add(&acc, v))
    }

    pub fn canonicalize(&self, v: FieldValue) -> Result<FieldValue> {
        self.0.canonicalize(v)
    }

    pub fn parse_value(&self, v: &serde_json::Value) -> Result<FieldValue> {
        self.0.parse_value(v)
    }

    pub fn parse_str(&self, s: &str) -> Result<FieldValue> {
        self.0.parse_value(&serde_json::Value::String(s.to_string()))
    }

    pub fn value_to_json(&self, v: &FieldValue) -> serde_json::Value {
        self.0.value_to_json(v)
    }

    /// Compact human-readable form (JSON rendering without quotes).
    pub fn format_value(&self, v: &FieldValue) -> String {
        match self.value_to_json(v) {
            serde_json::Value::String(s) => s,
            other => other.to_string(),
        }
    }

    pub fn roots_of_unity_order(&self) -> u64 {
        self.0.roots_of_unity_order()
    }

    pub fn primitive_root_of_unity(&self, n: u64) -> Result<FieldValue> {
        self.0.primitive_root_of_unity(n)
    }

    /// Every `z` with `z^n = 1`, listed as powers of a primitive root of
    /// order `gcd(n, roots_of_unity_order)`.
    pub fn roots_of_unity(&self, n: u64) -> Vec<FieldValue> {
        let e = arith::gcd(n, self.roots_of_unity_order());
        let w = self
            .primitive_root_of_unity(e)
            .expect("torsion subgroup has a root of every dividing order");
        let mut out = Vec::with_capacity(e as usize);
        let mut z = self.one();
        for _ in 0..e {
            out.push(z.clone());
            z = self.mul(&z, &w);
        }
        out
    }

    /// Multiplicative order of a nonzero element, bounded by the torsion
    /// order; `None` for elements of infinite order.
    pub fn multiplicative_order(&self, a: &FieldValue) -> Option<u64> {
        if self.is_zero(a) {
            return None;
        }
        let t = self.roots_of_unity_order();
        if !self.is_one(&self.pow(a, t)) {
            return None;
        }
        arith::divisors(t)
            .into_iter()
            .find(|&d| self.is_one(&self.pow(a, d)))
    }

    pub fn elements(&self) -> Option<Vec<FieldValue>> {
        self.0.elements()
    }

    pub fn random_value(&self, rng: &mut dyn RngCore) -> FieldValue {
        self.0.random_value(rng)
    }

    pub fn random_nonzero(&self, rng: &mut dyn RngCore) -> FieldValue {
        loop {
            let v = self.random_value(rng);
            if !self.is_zero(&v) {
                return v;
            }
        }
    }

    /// Canonical inclusion of `v ∈ from` into this field.
    pub fn embed(&self, from: &Field, v: &FieldValue) -> Result<FieldValue> {
        if from == self {
            return Ok(v.clone());
        }
        self.0.embed_from(from, v)
    }

    /// `char F = 0` or `gcd(char F, |G|) = 1`.
    pub fn is_semisimple_for(&self, order: usize) -> bool {
        let c = self.characteristic();
        c == 0 || arith::gcd(c, order as u64) == 1
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.spec() == other.spec()
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.spec())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec())
    }
}

pub fn semisimplicity_check(field: &Field, group: &Group) -> bool {
    field.is_semisimple_for(group.order())
}

/// `𝔼 = 𝔽(ω)` for `ω` a primitive `exp(G)`-th root of unity.
pub fn splitting_extension(field: &Field, group: &Group) -> Result<Field> {
    if !semisimplicity_check(field, group) {
        return Err(Error::NotSemisimple {
            field: field.spec(),
            order: group.order(),
        });
    }
    let e = group.exponent();
    if field.roots_of_unity_order() % e == 0 {
        return Ok(field.clone());
    }
    match field.kind() {
        FieldKind::Rationals => Ok(Field::new(CyclotomicField::new(e)?)),
        FieldKind::Cyclotomic { n, .. } => Ok(Field::new(CyclotomicField::new(arith::lcm(n, e))?)),
        FieldKind::Prime { p } => {
            let k = arith::multiplicative_order(p, e).expect("p coprime to exp(G)");
            Ok(Field::new(GaloisField::new(p, k as u32)?))
        }
        FieldKind::Galois { p, k, .. } => Err(Error::Unsupported(format!(
            "splitting extension of GF({p}^{k}) beyond the prime subfield"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn all_test_fields() -> Vec<Field> {
        ["Q", "GF(2)", "GF(7)", "GF(2^3)", "GF(3^2)", "Q(zeta_3)", "Q(zeta_5)", "Q(zeta_12)"]
            .iter()
            .map(|s| field_from_spec(s).unwrap())
            .collect()
    }

    #[test]
    fn exact_arithmetic_laws_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for f in all_test_fields() {
            let trials = if matches!(f.kind(), FieldKind::Cyclotomic { .. }) { 1000 } else { 10_000 };
            for _ in 0..trials {
                let a = f.random_value(&mut rng);
                let b = f.random_value(&mut rng);
                let c = f.random_value(&mut rng);
                assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)), "{f}");
                assert_eq!(
                    f.mul(&a, &f.add(&b, &c)),
                    f.add(&f.mul(&a, &b), &f.mul(&a, &c)),
                    "{f}"
                );
                assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)), "{f}");
                if !f.is_zero(&a) {
                    let ai = f.inv(&a).unwrap();
                    assert!(f.is_one(&f.mul(&a, &ai)), "{f}: {a:?}");
                }
                assert_eq!(f.canonicalize(a.clone()).unwrap(), a);
            }
        }
    }

    #[test]
    fn primitive_roots_have_exact_order() {
        for f in all_test_fields() {
            let t = f.roots_of_unity_order();
            for n in arith::divisors(t) {
                let w = f.primitive_root_of_unity(n).unwrap();
                assert!(f.is_one(&f.pow(&w, n)));
                for d in arith::divisors(n).into_iter().filter(|&d| d < n) {
                    assert!(!f.is_one(&f.pow(&w, d)), "{f} n={n} d={d}");
                }
                assert_eq!(f.roots_of_unity(n).len() as u64, n);
            }
        }
    }

    #[test]
    fn prime_cyclotomic_root_sum_vanishes() {
        for p in [2u64, 3, 5, 7] {
            let f = field_from_spec(&format!("Q(zeta_{p})")).unwrap();
            let w = f.primitive_root_of_unity(p).unwrap();
            let powers: Vec<_> = (0..p).map(|i| f.pow(&w, i)).collect();
            assert!(f.is_zero(&f.sum(&powers)));
        }
    }

    #[test]
    fn semisimplicity_examples() {
        let z2 = Group::cyclic(2);
        let z6 = Group::cyclic(6);
        assert!(semisimplicity_check(&field_from_spec("Q").unwrap(), &z6));
        assert!(!semisimplicity_check(&field_from_spec("GF(2)").unwrap(), &z2));
        assert!(semisimplicity_check(&field_from_spec("GF(7)").unwrap(), &z6));
    }

    #[test]
    fn splitting_extension_examples() {
        let s3 = Group::symmetric3();
        let q = field_from_spec("Q").unwrap();
        assert_eq!(splitting_extension(&q, &s3).unwrap().spec(), "Q(zeta_6)");
        let gf7 = field_from_spec("GF(7)").unwrap();
        assert_eq!(splitting_extension(&gf7, &Group::cyclic(6)).unwrap(), gf7);
        let gf2 = field_from_spec("GF(2)").unwrap();
        assert_eq!(splitting_extension(&gf2, &Group::cyclic(3)).unwrap().spec(), "GF(2^2)");
        assert!(matches!(
            splitting_extension(&gf2, &Group::cyclic(2)),
            Err(Error::NotSemisimple { .. })
        ));
    }

    #[test]
    fn embeddings() {
        let q = field_from_spec("Q").unwrap();
        let e = field_from_spec("Q(zeta_3)").unwrap();
        let v = q.parse_str("-1/2").unwrap();
        let ev = e.embed(&q, &v).unwrap();
        assert_eq!(e.format_value(&ev), r#"["-1/2","0"]"#);
        let gf2 = field_from_spec("GF(2)").unwrap();
        let gf4 = field_from_spec("GF(2^2)").unwrap();
        assert_eq!(gf4.embed(&gf2, &gf2.one()).unwrap(), gf4.one());
        let e12 = field_from_spec("Q(zeta_12)").unwrap();
        let z3 = e.primitive_root_of_unity(3).unwrap();
        let z3_in_12 = e12.embed(&e, &z3).unwrap();
        assert_eq!(e12.multiplicative_order(&z3_in_12), Some(3));
        assert!(e.embed(&gf2, &gf2.one()).is_err());
    }
}
