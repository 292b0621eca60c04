use rand::{Rng, RngCore};

use super::prime::parse_residue;
use super::{Field, FieldBackend, FieldKind, FieldValue};
use crate::arith;
use crate::error::{Error, Result};

/// GF(p^k) as GF(p)[x] modulo the lexicographically smallest monic
/// irreducible of degree `k`.
#[derive(Debug, Clone)]
pub struct GaloisField {
    p: u64,
    k: u32,
    /// Monic modulus, constant term first, length `k + 1`.
    modulus: Vec<u64>,
    q: u64,
}

// Dense polynomial helpers over GF(p); constant term first, no trailing zeros.
fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + arith::mul_mod(x, y, p)) % p;
        }
    }
    trim(out)
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let m = trim(m.to_vec());
    let dm = m.len() - 1;
    let lead_inv = arith::pow_mod(m[dm], p - 2, p);
    while r.len() > dm {
        let dr = r.len() - 1;
        let c = arith::mul_mod(r[dr], lead_inv, p);
        for (i, &mi) in m.iter().enumerate() {
            let idx = dr - dm + i;
            r[idx] = (r[idx] + p - arith::mul_mod(c, mi, p)) % p;
        }
        r = trim(r);
    }
    r
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn poly_pow_mod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = poly_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem(&poly_mul(&acc, &b, p), m, p);
        }
        b = poly_rem(&poly_mul(&b, &b, p), m, p);
        e >>= 1;
    }
    acc
}

/// Ben-Or irreducibility test for a monic `f` of degree `k` over GF(p).
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    let x = vec![0u64, 1];
    let mut xp = x.clone();
    for _ in 0..k / 2 {
        xp = poly_pow_mod(&xp, p, f, p);
        let g = poly_gcd(f, &poly_sub(&xp, &x, p), p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn digits(mut code: u64, p: u64, k: usize) -> Vec<u64> {
    (0..k)
        .map(|_| {
            let d = code % p;
            code /= p;
            d
        })
        .collect()
}

impl GaloisField {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k < 2 {
            return Err(Error::InputError(format!("GF({p}^{k}) needs k >= 2; use GF({p})")));
        }
        let q = p
            .checked_pow(k)
            .filter(|&q| q < 1 << 24)
            .ok_or_else(|| Error::Unsupported(format!("GF({p}^{k}) too large")))?;
        let ku = k as usize;
        let pk = q;
        let modulus = (0..pk)
            .map(|code| {
                let mut f = digits(code, p, ku);
                f.push(1);
                f
            })
            .find(|f| is_irreducible(f, p))
            .ok_or(Error::NoIrreducibleFound { p, k })?;
        Ok(GaloisField { p, k, modulus, q })
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    fn coeffs<'a>(&self, v: &'a FieldValue) -> &'a [u64] {
        match v {
            FieldValue::Poly(c) => c,
            other => panic!("foreign payload {other:?} in {}", self.spec()),
        }
    }

    fn pack(&self, mut c: Vec<u64>) -> FieldValue {
        c.resize(self.k as usize, 0);
        FieldValue::Poly(c)
    }

    /// Integer encoding `Σ c_i p^i` used for canonical ordering.
    pub fn code(&self, v: &FieldValue) -> u64 {
        self.coeffs(v).iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn from_code(&self, code: u64) -> FieldValue {
        FieldValue::Poly(digits(code, self.p, self.k as usize))
    }
}

impl FieldBackend for GaloisField {
    fn spec(&self) -> String {
        format!("GF({}^{})", self.p, self.k)
    }

    fn kind(&self) -> FieldKind {
        FieldKind::Galois { p: self.p, k: self.k, modulus: self.modulus.clone() }
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn size(&self) -> Option<u64> {
        Some(self.q)
    }

    fn zero(&self) -> FieldValue {
        self.pack(Vec::new())
    }

    fn one(&self) -> FieldValue {
        self.pack(vec![1])
    }

    fn from_i64(&self, v: i64) -> FieldValue {
        self.pack(vec![(v as i128).rem_euclid(self.p as i128) as u64])
    }

    fn is_zero(&self, a: &FieldValue) -> bool {
        self.coeffs(a).iter().all(|&c| c == 0)
    }

    fn add(&self, a: &FieldValue, b: &FieldValue) -> FieldValue {
        let c = self
            .coeffs(a)
            .iter()
            .zip(self.coeffs(b))
            .map(|(x, y)| (x + y) % self.p)
            .collect();
        FieldValue::Poly(c)
    }

    fn neg(&self, a: &FieldValue) -> FieldValue {
        FieldValue::Poly(self.coeffs(a).iter().map(|&x| (self.p - x) % self.p).collect())
    }

    fn mul(&self, a: &FieldValue, b: &FieldValue) -> FieldValue {
        let prod = poly_mul(&trim(self.coeffs(a).to_vec()), &trim(self.coeffs(b).to_vec()), self.p);
        self.pack(poly_rem(&prod, &self.modulus, self.p))
    }

    fn inv(&self, a: &FieldValue) -> Option<FieldValue> {
        if self.is_zero(a) {
            return None;
        }
        let c = trim(self.coeffs(a).to_vec());
        Some(self.pack(poly_pow_mod(&c, self.q - 2, &self.modulus, self.p)))
    }

    fn canonicalize(&self, v: FieldValue) -> Result<FieldValue> {
        match v {
            FieldValue::Poly(c) => {
                let c: Vec<u64> = c.into_iter().map(|x| x % self.p).collect();
                Ok(self.pack(poly_rem(&c, &self.modulus, self.p)))
            }
            FieldValue::Residue(r) => Ok(self.pack(vec![r % self.p])),
            other => Err(Error::FieldMismatch(format!("{other:?} is not in {}", self.spec()))),
        }
    }

    fn parse_value(&self, v: &serde_json::Value) -> Result<FieldValue> {
        match v {
            serde_json::Value::Array(items) => {
                if items.len() > self.k as usize {
                    return Err(Error::ParseError(format!(
                        "{} value needs at most {} coefficients",
                        self.spec(),
                        self.k
                    )));
                }
                let c = items
                    .iter()
                    .map(|it| parse_residue(it, self.p))
                    .collect::<Result<Vec<_>>>()?;
                Ok(self.pack(c))
            }
            serde_json::Value::String(s) if s.trim_start().starts_with('[') => {
                let inner: serde_json::Value = serde_json::from_str(s)
                    .map_err(|_| Error::ParseError(format!("{} value {s:?}", self.spec())))?;
                self.parse_value(&inner)
            }
            other => Ok(self.pack(vec![parse_residue(other, self.p)?])),
        }
    }

    fn value_to_json(&self, v: &FieldValue) -> serde_json::Value {
        serde_json::Value::Array(self.coeffs(v).iter().map(|&c| c.into()).collect())
    }

    fn roots_of_unity_order(&self) -> u64 {
        self.q - 1
    }

    fn primitive_root_of_unity(&self, n: u64) -> Result<FieldValue> {
        if n == 0 || (self.q - 1) % n != 0 {
            return Err(Error::NoSuchRoot { field: self.spec(), n });
        }
        let primes = arith::prime_factors(n);
        let one = self.one();
        let f = Field::new(self.clone());
        (1..self.q)
            .map(|code| self.from_code(code))
            .find(|a| f.pow(a, n) == one && primes.iter().all(|&r| f.pow(a, n / r) != one))
            .ok_or(Error::NoSuchRoot { field: self.spec(), n })
    }

    fn elements(&self) -> Option<Vec<FieldValue>> {
        Some((0..self.q).map(|c| self.from_code(c)).collect())
    }

    fn random_value(&self, rng: &mut dyn RngCore) -> FieldValue {
        self.from_code(rng.gen_range(0..self.q))
    }

    fn embed_from(&self, from: &Field, v: &FieldValue) -> Result<FieldValue> {
        match (from.kind(), v) {
            (FieldKind::Prime { p }, FieldValue::Residue(r)) if p == self.p => {
                Ok(self.pack(vec![*r]))
            }
            _ => Err(Error::FieldMismatch(format!("{from} does not embed in {}", self.spec()))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_irreducible_moduli() {
        // x^2 + x + 1 over GF(2); x^2 + 1 over GF(3); x^3 + x + 1 over GF(2).
        assert_eq!(GaloisField::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(GaloisField::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(GaloisField::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
    }

    #[test]
    fn irreducibility_matches_root_search_for_quadratics_and_cubics() {
        for p in [2u64, 3, 5] {
            for k in [2usize, 3] {
                for code in 0..p.pow(k as u32) {
                    let mut f = digits(code, p, k);
                    f.push(1);
                    let has_root = (0..p).any(|x| {
                        f.iter().rev().fold(0, |acc, &c| (acc * x + c) % p) == 0
                    });
                    // Degree ≤ 3 polynomials are irreducible iff rootless.
                    assert_eq!(is_irreducible(&f, p), !has_root, "p={p} f={f:?}");
                }
            }
        }
    }

    #[test]
    fn multiplicative_group_is_cyclic_of_order_q_minus_1() {
        let f = Field::new(GaloisField::new(2, 3).unwrap());
        let w = f.primitive_root_of_unity(7).unwrap();
        let powers: std::collections::BTreeSet<_> = (0..7).map(|i| f.pow(&w, i)).collect();
        assert_eq!(powers.len(), 7);
    }

    #[test]
    fn parse_forms() {
        let f = Field::new(GaloisField::new(3, 2).unwrap());
        let a = f.parse_value(&serde_json::json!([1, 2])).unwrap();
        let b = f.parse_str("[1,2]").unwrap();
        assert_eq!(a, b);
        assert_eq!(f.parse_str("4").unwrap(), f.one());
        assert!(f.parse_value(&serde_json::json!([1, 2, 0])).is_err());
        assert_eq!(f.format_value(&a), "[1,2]");
    }
}
