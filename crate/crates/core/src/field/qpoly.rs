//! Dense polynomials over ℚ, constant term first, no trailing zeros.

use num_rational::BigRational;
use num_traits::{One, Zero};

pub(crate) type QPoly = Vec<BigRational>;

pub(crate) fn trim(mut a: QPoly) -> QPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

pub(crate) fn sub(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

pub(crate) fn mul(a: &[BigRational], b: &[BigRational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Quotient and remainder of `a` by nonzero `m`.
pub(crate) fn divrem(a: &[BigRational], m: &[BigRational]) -> (QPoly, QPoly) {
    let m = trim(m.to_vec());
    assert!(!m.is_empty(), "polynomial division by zero");
    let dm = m.len() - 1;
    let lead_inv = m[dm].recip();
    let mut r = trim(a.to_vec());
    let mut q = vec![BigRational::zero(); r.len().saturating_sub(dm)];
    while r.len() > dm {
        let dr = r.len() - 1;
        let c = &r[dr] * &lead_inv;
        for (i, mi) in m.iter().enumerate() {
            let idx = dr - dm + i;
            r[idx] -= &c * mi;
        }
        q[dr - dm] = c;
        r = trim(r);
    }
    (trim(q), r)
}

/// `(g, s)` with `s·a ≡ g (mod b)` and `g = gcd(a, b)` (not normalized).
pub(crate) fn ext_gcd_left(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly) {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut s0, mut s1): (QPoly, QPoly) = (vec![BigRational::one()], Vec::new());
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s2 = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    (r0, s0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(v: &[i64]) -> QPoly {
        trim(v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
    }

    #[test]
    fn division_identity() {
        let a = q(&[1, 2, 3, 4, 5]);
        let m = q(&[1, 1, 1]);
        let (qq, r) = divrem(&a, &m);
        let back = {
            let prod = mul(&qq, &m);
            let n = prod.len().max(r.len());
            let z = BigRational::zero();
            trim((0..n).map(|i| prod.get(i).unwrap_or(&z) + r.get(i).unwrap_or(&z)).collect())
        };
        assert_eq!(back, a);
        assert!(r.len() < m.len());
    }

    #[test]
    fn inverse_modulo_phi3() {
        // (1 + x)·s ≡ const (mod x² + x + 1)
        let phi = q(&[1, 1, 1]);
        let (g, s) = ext_gcd_left(&q(&[1, 1]), &phi);
        assert_eq!(g.len(), 1);
        let (_, r) = divrem(&mul(&s, &q(&[1, 1])), &phi);
        assert_eq!(r, g);
    }
}
