use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::RngCore;

use super::qpoly::{self, QPoly};
use super::rational::{format_rational, random_rational, rational_from_json};
use super::{Field, FieldBackend, FieldKind, FieldValue};
use crate::arith;
use crate::error::{Error, Result};

/// Integer coefficients of the `n`-th cyclotomic polynomial, constant term
/// first: `Φ_n = (x^n − 1) / Π_{d | n, d < n} Φ_d`.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    assert!(n >= 1);
    let mut num: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in arith::divisors(n).into_iter().filter(|&d| d < n) {
        num = exact_div_monic(&num, &cyclotomic_polynomial(d));
    }
    num
}

fn exact_div_monic(a: &[BigInt], m: &[BigInt]) -> Vec<BigInt> {
    let dm = m.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - dm];
    for i in (0..q.len()).rev() {
        let c = r[i + dm].clone();
        for (j, mj) in m.iter().enumerate() {
            r[i + j] -= &c * mj;
        }
        q[i] = c;
    }
    debug_assert!(r.iter().all(|c| c.is_zero()), "inexact cyclotomic division");
    q
}

/// ℚ(ζ_n) as ℚ[x]/(Φ_n).
#[derive(Debug, Clone)]
pub struct CyclotomicField {
    n: u64,
    phi: Vec<BigInt>,
    phi_q: QPoly,
    degree: usize,
}

impl CyclotomicField {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InputError("Q(zeta_0) is undefined".into()));
        }
        if n > 10_000 {
            return Err(Error::Unsupported(format!("Q(zeta_{n}) too large")));
        }
        let phi = cyclotomic_polynomial(n);
        let phi_q = phi.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        let degree = phi.len() - 1;
        Ok(CyclotomicField { n, phi, phi_q, degree })
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    fn coeffs<'a>(&self, v: &'a FieldValue) -> &'a [BigRational] {
        match v {
            FieldValue::Cyclotomic(c) => c,
            other => panic!("foreign payload {other:?} in {}", self.spec()),
        }
    }

    fn pack(&self, c: QPoly) -> FieldValue {
        let mut c = if c.len() > self.degree { qpoly::divrem(&c, &self.phi_q).1 } else { c };
        c.resize(self.degree, BigRational::zero());
        FieldValue::Cyclotomic(c)
    }

    fn monomial(&self, e: u64) -> FieldValue {
        let mut c = vec![BigRational::zero(); e as usize + 1];
        c[e as usize] = BigRational::one();
        self.pack(c)
    }

    fn constant(&self, r: BigRational) -> FieldValue {
        self.pack(vec![r])
    }
}

impl FieldBackend for CyclotomicField {
    fn spec(&self) -> String {
        format!("Q(zeta_{})", self.n)
    }

    fn kind(&self) -> FieldKind {
        FieldKind::Cyclotomic { n: self.n, phi: self.phi.clone() }
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn size(&self) -> Option<u64> {
        None
    }

    fn zero(&self) -> FieldValue {
        self.pack(Vec::new())
    }

    fn one(&self) -> FieldValue {
        self.constant(BigRational::one())
    }

    fn from_i64(&self, v: i64) -> FieldValue {
        self.constant(BigRational::from_integer(v.into()))
    }

    fn is_zero(&self, a: &FieldValue) -> bool {
        self.coeffs(a).iter().all(|c| c.is_zero())
    }

    fn add(&self, a: &FieldValue, b: &FieldValue) -> FieldValue {
        FieldValue::Cyclotomic(self.coeffs(a).iter().zip(self.coeffs(b)).map(|(x, y)| x + y).collect())
    }

    fn neg(&self, a: &FieldValue) -> FieldValue {
        FieldValue::Cyclotomic(self.coeffs(a).iter().map(|x| -x).collect())
    }

    fn mul(&self, a: &FieldValue, b: &FieldValue) -> FieldValue {
        let prod = qpoly::mul(
            &qpoly::trim(self.coeffs(a).to_vec()),
            &qpoly::trim(self.coeffs(b).to_vec()),
        );
        self.pack(prod)
    }

    fn inv(&self, a: &FieldValue) -> Option<FieldValue> {
        if self.is_zero(a) {
            return None;
        }
        let (g, s) = qpoly::ext_gcd_left(&qpoly::trim(self.coeffs(a).to_vec()), &self.phi_q);
        // Φ_n is irreducible, so the gcd is a nonzero constant.
        debug_assert_eq!(g.len(), 1);
        let ginv = g[0].recip();
        Some(self.pack(s.into_iter().map(|c| c * &ginv).collect()))
    }

    fn canonicalize(&self, v: FieldValue) -> Result<FieldValue> {
        match v {
            FieldValue::Cyclotomic(c) => Ok(self.pack(qpoly::trim(c))),
            FieldValue::Rational(r) => Ok(self.constant(r)),
            other => Err(Error::FieldMismatch(format!("{other:?} is not in {}", self.spec()))),
        }
    }

    fn parse_value(&self, v: &serde_json::Value) -> Result<FieldValue> {
        match v {
            serde_json::Value::Array(items) => {
                let c = items.iter().map(rational_from_json).collect::<Result<Vec<_>>>()?;
                Ok(self.pack(qpoly::trim(c)))
            }
            serde_json::Value::String(s) if s.trim_start().starts_with('[') => {
                let inner: serde_json::Value = serde_json::from_str(s)
                    .map_err(|_| Error::ParseError(format!("{} value {s:?}", self.spec())))?;
                self.parse_value(&inner)
            }
            other => Ok(self.constant(rational_from_json(other)?)),
        }
    }

    fn value_to_json(&self, v: &FieldValue) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs(v).iter().map(|c| serde_json::Value::String(format_rational(c))).collect(),
        )
    }

    fn roots_of_unity_order(&self) -> u64 {
        arith::lcm(2, self.n)
    }

    fn primitive_root_of_unity(&self, k: u64) -> Result<FieldValue> {
        if k == 0 || self.roots_of_unity_order() % k != 0 {
            return Err(Error::NoSuchRoot { field: self.spec(), n: k });
        }
        if self.n % k == 0 {
            Ok(self.monomial(self.n / k))
        } else {
            // n odd, k = 2k' with k' odd: −ζ of order k' has order k.
            Ok(self.neg(&self.monomial(self.n / (k / 2))))
        }
    }

    fn elements(&self) -> Option<Vec<FieldValue>> {
        None
    }

    fn random_value(&self, rng: &mut dyn RngCore) -> FieldValue {
        FieldValue::Cyclotomic((0..self.degree).map(|_| random_rational(rng)).collect())
    }

    fn embed_from(&self, from: &Field, v: &FieldValue) -> Result<FieldValue> {
        match (from.kind(), v) {
            (FieldKind::Rationals, FieldValue::Rational(r)) => Ok(self.constant(r.clone())),
            (FieldKind::Cyclotomic { n: m, .. }, FieldValue::Cyclotomic(c)) if self.n % m == 0 => {
                let step = (self.n / m) as usize;
                let mut spread = vec![BigRational::zero(); (c.len().max(1) - 1) * step + 1];
                for (i, ci) in c.iter().enumerate() {
                    spread[i * step] = ci.clone();
                }
                Ok(self.pack(qpoly::trim(spread)))
            }
            _ => Err(Error::FieldMismatch(format!("{from} does not embed in {}", self.spec()))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[BigInt]) -> Vec<i64> {
        v.iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        // Φ_3 = (x³ − 1)/(x − 1) computed by hand.
        assert_eq!(ints(&cyclotomic_polynomial(3)), vec![1, 1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(4)), vec![1, 0, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(6)), vec![1, -1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(12)), vec![1, 0, -1, 0, 1]);
        for n in 1..=30 {
            assert_eq!(cyclotomic_polynomial(n).len() as u64 - 1, arith::euler_phi(n));
        }
    }

    #[test]
    fn odd_order_field_has_twice_the_roots() {
        let f = Field::new(CyclotomicField::new(3).unwrap());
        let w6 = f.primitive_root_of_unity(6).unwrap();
        assert_eq!(f.multiplicative_order(&w6), Some(6));
        assert!(f.primitive_root_of_unity(4).is_err());
    }
}
