use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, RngCore};

use super::{Field, FieldBackend, FieldKind, FieldValue};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, Default)]
pub struct RationalField;

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::ParseError(format!("rational value {s:?}"));
    let r = match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            BigRational::new(n, d)
        }
        None => BigRational::from_integer(s.parse().map_err(|_| bad())?),
    };
    Ok(r)
}

pub(crate) fn rational_from_json(v: &serde_json::Value) -> Result<BigRational> {
    match v {
        serde_json::Value::String(s) => parse_rational(s),
        serde_json::Value::Number(n) if n.is_i64() => {
            Ok(BigRational::from_integer(BigInt::from(n.as_i64().unwrap())))
        }
        other => Err(Error::ParseError(format!("rational value {other}"))),
    }
}

pub(crate) fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn random_rational(rng: &mut dyn RngCore) -> BigRational {
    let n: i64 = rng.gen_range(-4..=4);
    let d: i64 = if rng.gen_bool(0.25) { rng.gen_range(2..=3) } else { 1 };
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn unwrap(v: &FieldValue) -> &BigRational {
    match v {
        FieldValue::Rational(r) => r,
        other => panic!("foreign payload {other:?} in Q"),
    }
}

impl FieldBackend for RationalField {
    fn spec(&self) -> String {
        "Q".into()
    }

    fn kind(&self) -> FieldKind {
        FieldKind::Rationals
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn size(&self) -> Option<u64> {
        None
    }

    fn zero(&self) -> FieldValue {
        FieldValue::Rational(BigRational::zero())
    }

    fn one(&self) -> FieldValue {
        FieldValue::Rational(BigRational::one())
    }

    fn from_i64(&self, v: i64) -> FieldValue {
        FieldValue::Rational(BigRational::from_integer(v.into()))
    }

    fn is_zero(&self, a: &FieldValue) -> bool {
        unwrap(a).is_zero()
    }

    fn add(&self, a: &FieldValue, b: &FieldValue) -> FieldValue {
        FieldValue::Rational(unwrap(a) + unwrap(b))
    }

    fn neg(&self, a: &FieldValue) -> FieldValue {
        FieldValue::Rational(-unwrap(a))
    }

    fn mul(&self, a: &FieldValue, b: &FieldValue) -> FieldValue {
        FieldValue::Rational(unwrap(a) * unwrap(b))
    }

    fn inv(&self, a: &FieldValue) -> Option<FieldValue> {
        let a = unwrap(a);
        (!a.is_zero()).then(|| FieldValue::Rational(a.recip()))
    }

    fn canonicalize(&self, v: FieldValue) -> Result<FieldValue> {
        match v {
            // BigRational keeps itself reduced with a positive denominator.
            FieldValue::Rational(r) => Ok(FieldValue::Rational(BigRational::new(
                r.numer().clone(),
                r.denom().clone(),
            ))),
            other => Err(Error::FieldMismatch(format!("{other:?} is not a rational"))),
        }
    }

    fn parse_value(&self, v: &serde_json::Value) -> Result<FieldValue> {
        rational_from_json(v).map(FieldValue::Rational)
    }

    fn value_to_json(&self, v: &FieldValue) -> serde_json::Value {
        serde_json::Value::String(format_rational(unwrap(v)))
    }

    fn roots_of_unity_order(&self) -> u64 {
        2
    }

    fn primitive_root_of_unity(&self, n: u64) -> Result<FieldValue> {
        match n {
            1 => Ok(self.one()),
            2 => Ok(self.from_i64(-1)),
            _ => Err(Error::NoSuchRoot { field: self.spec(), n }),
        }
    }

    fn elements(&self) -> Option<Vec<FieldValue>> {
        None
    }

    fn random_value(&self, rng: &mut dyn RngCore) -> FieldValue {
        FieldValue::Rational(random_rational(rng))
    }

    fn embed_from(&self, from: &Field, _v: &FieldValue) -> Result<FieldValue> {
        Err(Error::FieldMismatch(format!("{from} does not embed in Q")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn parse_and_format() {
        let r = parse_rational("6/-4").unwrap();
        assert_eq!(format_rational(&r), "-3/2");
        assert!(r.is_negative());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&parse_rational(" 12 ").unwrap()), "12");
    }
}
