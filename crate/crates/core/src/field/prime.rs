use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, RngCore};

use super::{Field, FieldBackend, FieldKind, FieldValue};
use crate::arith;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= 1 << 31 {
            return Err(Error::Unsupported(format!("prime {p} too large")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn res(&self, v: &FieldValue) -> u64 {
        match v {
            FieldValue::Residue(r) => *r,
            other => panic!("foreign payload {other:?} in GF({})", self.p),
        }
    }

    fn reduce_i128(&self, v: i128) -> u64 {
        v.rem_euclid(self.p as i128) as u64
    }
}

/// Parses an integer (string or JSON number) and reduces it modulo `p`.
pub(crate) fn parse_residue(v: &serde_json::Value, p: u64) -> Result<u64> {
    let big: BigInt = match v {
        serde_json::Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::ParseError(format!("finite-field value {s:?}")))?,
        serde_json::Value::Number(n) if n.is_i64() => BigInt::from(n.as_i64().unwrap()),
        other => return Err(Error::ParseError(format!("finite-field value {other}"))),
    };
    Ok(big.mod_floor(&BigInt::from(p)).to_u64().unwrap())
}

impl FieldBackend for PrimeField {
    fn spec(&self) -> String {
        format!("GF({})", self.p)
    }

    fn kind(&self) -> FieldKind {
        FieldKind::Prime { p: self.p }
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn size(&self) -> Option<u64> {
        Some(self.p)
    }

    fn zero(&self) -> FieldValue {
        FieldValue::Residue(0)
    }

    fn one(&self) -> FieldValue {
        FieldValue::Residue(1 % self.p)
    }

    fn from_i64(&self, v: i64) -> FieldValue {
        FieldValue::Residue(self.reduce_i128(v as i128))
    }

    fn is_zero(&self, a: &FieldValue) -> bool {
        self.res(a) == 0
    }

    fn add(&self, a: &FieldValue, b: &FieldValue) -> FieldValue {
        FieldValue::Residue((self.res(a) + self.res(b)) % self.p)
    }

    fn neg(&self, a: &FieldValue) -> FieldValue {
        FieldValue::Residue((self.p - self.res(a)) % self.p)
    }

    fn mul(&self, a: &FieldValue, b: &FieldValue) -> FieldValue {
        FieldValue::Residue(arith::mul_mod(self.res(a), self.res(b), self.p))
    }

    fn inv(&self, a: &FieldValue) -> Option<FieldValue> {
        let a = self.res(a);
        (a != 0).then(|| FieldValue::Residue(arith::pow_mod(a, self.p - 2, self.p)))
    }

    fn canonicalize(&self, v: FieldValue) -> Result<FieldValue> {
        match v {
            FieldValue::Residue(r) => Ok(FieldValue::Residue(r % self.p)),
            other => Err(Error::FieldMismatch(format!("{other:?} is not in {}", self.spec()))),
        }
    }

    fn parse_value(&self, v: &serde_json::Value) -> Result<FieldValue> {
        parse_residue(v, self.p).map(FieldValue::Residue)
    }

    fn value_to_json(&self, v: &FieldValue) -> serde_json::Value {
        serde_json::Value::String(self.res(v).to_string())
    }

    fn roots_of_unity_order(&self) -> u64 {
        self.p - 1
    }

    fn primitive_root_of_unity(&self, n: u64) -> Result<FieldValue> {
        if n == 0 || (self.p - 1) % n != 0 {
            return Err(Error::NoSuchRoot { field: self.spec(), n });
        }
        let primes = arith::prime_factors(n);
        (1..self.p)
            .find(|&a| {
                arith::pow_mod(a, n, self.p) == 1
                    && primes.iter().all(|&q| arith::pow_mod(a, n / q, self.p) != 1)
            })
            .map(FieldValue::Residue)
            .ok_or(Error::NoSuchRoot { field: self.spec(), n })
    }

    fn elements(&self) -> Option<Vec<FieldValue>> {
        Some((0..self.p).map(FieldValue::Residue).collect())
    }

    fn random_value(&self, rng: &mut dyn RngCore) -> FieldValue {
        FieldValue::Residue(rng.gen_range(0..self.p))
    }

    fn embed_from(&self, from: &Field, _v: &FieldValue) -> Result<FieldValue> {
        Err(Error::FieldMismatch(format!("{from} does not embed in {}", self.spec())))
    }
}
