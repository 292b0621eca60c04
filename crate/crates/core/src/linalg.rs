//! Dense exact linear algebra over a [`Field`].
//!
//! Rank is computed by interchangeable elimination strategies looked up by
//! name in a [`RankRegistry`]. All of them pick the pivot as the first
//! nonzero entry in a row-major scan of the unreduced rows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::field::{Field, FieldKind, FieldValue};

pub type Matrix = Vec<Vec<FieldValue>>;

/// First `(row, col)` in row-major order among rows not yet used.
fn next_pivot<T>(rows: &[Vec<T>], used: &[bool], is_zero: impl Fn(&T) -> bool) -> Option<(usize, usize)> {
    rows.iter()
        .enumerate()
        .filter(|(r, _)| !used[*r])
        .find_map(|(r, row)| row.iter().position(|v| !is_zero(v)).map(|c| (r, c)))
}

pub trait RankStrategy: Send + Sync {
    fn name(&self) -> &'static str;
    fn supports(&self, field: &Field) -> bool;
    fn rank(&self, field: &Field, rows: &[Vec<FieldValue>]) -> usize;
}

/// Elimination with exact inverses; works over every field.
pub struct Gauss;

/// Fraction-free Bareiss elimination on integer-scaled rows (ℚ only).
pub struct Bareiss;

/// Cross-multiplication without inverses; rows of ℚ and ℚ(ζ_n) values are
/// rescaled to primitive integer content after each step.
pub struct DivisionFree;

impl RankStrategy for Gauss {
    fn name(&self) -> &'static str {
        "gauss"
    }

    fn supports(&self, _field: &Field) -> bool {
        true
    }

    fn rank(&self, field: &Field, rows: &[Vec<FieldValue>]) -> usize {
        let mut m = rows.to_vec();
        let mut used = vec![false; m.len()];
        let mut rank = 0;
        while let Some((r, c)) = next_pivot(&m, &used, |v| field.is_zero(v)) {
            used[r] = true;
            rank += 1;
            let pinv = field.inv(&m[r][c]).expect("pivot is nonzero");
            let prow = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if used[i] || field.is_zero(&row[c]) {
                    continue;
                }
                let factor = field.mul(&row[c], &pinv);
                for (x, p) in row.iter_mut().zip(&prow) {
                    *x = field.sub(x, &field.mul(&factor, p));
                }
            }
        }
        rank
    }
}

fn as_rational(v: &FieldValue) -> &BigRational {
    match v {
        FieldValue::Rational(r) => r,
        other => panic!("bareiss needs rational entries, got {other:?}"),
    }
}

impl RankStrategy for Bareiss {
    fn name(&self) -> &'static str {
        "bareiss"
    }

    fn supports(&self, field: &Field) -> bool {
        field.kind() == FieldKind::Rationals
    }

    fn rank(&self, _field: &Field, rows: &[Vec<FieldValue>]) -> usize {
        let mut m: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|row| {
                let den = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(as_rational(v).denom()));
                row.iter().map(|v| (as_rational(v) * BigRational::from_integer(den.clone())).to_integer()).collect()
            })
            .collect();
        let mut used = vec![false; m.len()];
        let mut prev = BigInt::one();
        let mut rank = 0;
        while let Some((r, c)) = next_pivot(&m, &used, |v: &BigInt| v.is_zero()) {
            used[r] = true;
            rank += 1;
            let prow = m[r].clone();
            let p = prow[c].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if used[i] {
                    continue;
                }
                let a = row[c].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    let num = &p * &*x - &a * y;
                    debug_assert!((&num % &prev).is_zero(), "Bareiss division must be exact");
                    *x = num / &prev;
                }
            }
            prev = p;
        }
        rank
    }
}

/// Divides a row of ℚ / ℚ(ζ_n) values by the rational content of all its
/// coefficients, making them coprime integers. Other payloads pass through.
fn normalize_content(row: &mut [FieldValue]) {
    let mut coeffs: Vec<&BigRational> = Vec::new();
    for v in row.iter() {
        match v {
            FieldValue::Rational(r) => coeffs.push(r),
            FieldValue::Cyclotomic(c) => coeffs.extend(c.iter()),
            _ => return,
        }
    }
    let nonzero: Vec<&&BigRational> = coeffs.iter().filter(|c| !c.is_zero()).collect();
    if nonzero.is_empty() {
        return;
    }
    let den = nonzero.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let num = nonzero.iter().fold(BigInt::zero(), |acc, c| acc.gcd(&(c.numer() * &den / c.denom())));
    let scale = BigRational::new(den, num.abs());
    if scale.is_one() {
        return;
    }
    for v in row.iter_mut() {
        match v {
            FieldValue::Rational(r) => *r = &*r * &scale,
            FieldValue::Cyclotomic(c) => c.iter_mut().for_each(|x| *x = &*x * &scale),
            _ => unreachable!(),
        }
    }
}

impl RankStrategy for DivisionFree {
    fn name(&self) -> &'static str {
        "division-free"
    }

    fn supports(&self, _field: &Field) -> bool {
        true
    }

    fn rank(&self, field: &Field, rows: &[Vec<FieldValue>]) -> usize {
        let mut m = rows.to_vec();
        let mut used = vec![false; m.len()];
        let mut rank = 0;
        while let Some((r, c)) = next_pivot(&m, &used, |v| field.is_zero(v)) {
            used[r] = true;
            rank += 1;
            let prow = m[r].clone();
            let p = prow[c].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if used[i] || field.is_zero(&row[c]) {
                    continue;
                }
                let a = row[c].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x = field.sub(&field.mul(&p, x), &field.mul(&a, y));
                }
                normalize_content(row);
            }
        }
        rank
    }
}

/// Name-keyed rank strategies.
pub struct RankRegistry {
    strategies: Vec<Box<dyn RankStrategy>>,
}

impl RankRegistry {
    pub fn empty() -> Self {
        RankRegistry { strategies: Vec::new() }
    }

    pub fn register(&mut self, s: Box<dyn RankStrategy>) {
        self.strategies.push(s);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.strategies.iter().map(|s| s.name()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&dyn RankStrategy> {
        self.strategies.iter().find(|s| s.name() == name).map(|s| s.as_ref())
    }

    /// Finite fields use plain elimination, ℚ uses Bareiss and ℚ(ζ_n) the
    /// division-free variant.
    pub fn default_for(&self, field: &Field) -> &dyn RankStrategy {
        let name = match field.kind() {
            FieldKind::Rationals => "bareiss",
            FieldKind::Cyclotomic { .. } => "division-free",
            _ => "gauss",
        };
        self.get(name)
            .filter(|s| s.supports(field))
            .or_else(|| self.strategies.iter().find(|s| s.supports(field)).map(|s| s.as_ref()))
            .expect("no rank strategy supports this field")
    }
}

impl Default for RankRegistry {
    fn default() -> Self {
        let mut r = RankRegistry::empty();
        r.register(Box::new(Gauss));
        r.register(Box::new(Bareiss));
        r.register(Box::new(DivisionFree));
        r
    }
}

/// Rank with the default strategy for the field.
pub fn exact_rank(field: &Field, rows: &[Vec<FieldValue>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let reg = RankRegistry::default();
    reg.default_for(field).rank(field, rows)
}

pub fn identity(field: &Field, n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect())
        .collect()
}

pub fn mat_mul(field: &Field, a: &Matrix, b: &Matrix) -> Matrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter().zip(b).fold(field.zero(), |acc, (x, brow)| {
                        if field.is_zero(x) {
                            acc
                        } else {
                            field.add(&acc, &field.mul(x, &brow[j]))
                        }
                    })
                })
                .collect()
        })
        .collect()
}

pub fn transpose(a: &Matrix) -> Matrix {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Reduced row echelon form `R = T·A` with the transform `T` and the pivot
/// columns of `R`.
pub fn rref_with_transform(field: &Field, a: &Matrix) -> (Matrix, Matrix, Vec<usize>) {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m = a.clone();
    let mut t = identity(field, rows);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !field.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        t.swap(r, p);
        let inv = field.inv(&m[r][c]).expect("nonzero pivot");
        m[r] = m[r].iter().map(|x| field.mul(x, &inv)).collect();
        t[r] = t[r].iter().map(|x| field.mul(x, &inv)).collect();
        for i in 0..rows {
            if i == r || field.is_zero(&m[i][c]) {
                continue;
            }
            let f = m[i][c].clone();
            for j in 0..cols {
                let d = field.mul(&f, &m[r][j]);
                m[i][j] = field.sub(&m[i][j], &d);
            }
            for j in 0..rows {
                let d = field.mul(&f, &t[r][j]);
                t[i][j] = field.sub(&t[i][j], &d);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    (m, t, pivots)
}

/// Basis of `{v : A·v = 0}`.
pub fn nullspace(field: &Field, a: &Matrix, cols: usize) -> Vec<Vec<FieldValue>> {
    if a.is_empty() {
        return (0..cols)
            .map(|k| (0..cols).map(|j| if j == k { field.one() } else { field.zero() }).collect())
            .collect();
    }
    let (r, _, pivots) = rref_with_transform(field, a);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![field.zero(); cols];
            v[free] = field.one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(&r[i][free]);
            }
            v
        })
        .collect()
}

pub fn determinant(field: &Field, a: &Matrix) -> FieldValue {
    let n = a.len();
    let mut m = a.clone();
    let mut det = field.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !field.is_zero(&m[i][c])) else {
            return field.zero();
        };
        if p != c {
            m.swap(p, c);
            det = field.neg(&det);
        }
        det = field.mul(&det, &m[c][c]);
        let inv = field.inv(&m[c][c]).expect("nonzero pivot");
        for i in c + 1..n {
            if field.is_zero(&m[i][c]) {
                continue;
            }
            let f = field.mul(&m[i][c], &inv);
            for j in c..n {
                let d = field.mul(&f, &m[c][j]);
                m[i][j] = field.sub(&m[i][j], &d);
            }
        }
    }
    det
}

pub fn inverse(field: &Field, a: &Matrix) -> Option<Matrix> {
    let (r, t, pivots) = rref_with_transform(field, a);
    (pivots.len() == a.len() && r.len() == r.first().map_or(0, Vec::len)).then_some(t)
}

/// Invertible `Q` (rows×rows) and `P` (cols×cols) with `Q·A·P` diagonal:
/// `rank(A)` leading ones, zeros elsewhere.
pub fn diagonalizing_witness(field: &Field, a: &Matrix, cols: usize) -> (Matrix, Matrix, usize) {
    if a.is_empty() {
        return (Vec::new(), identity(field, cols), 0);
    }
    let (r, q, pivots) = rref_with_transform(field, a);
    let rank = pivots.len();
    let mut p_cols: Vec<Vec<FieldValue>> = pivots
        .iter()
        .map(|&c| (0..cols).map(|j| if j == c { field.one() } else { field.zero() }).collect())
        .collect();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v: Vec<FieldValue> = (0..cols).map(|j| if j == free { field.one() } else { field.zero() }).collect();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = field.neg(&r[i][free]);
        }
        p_cols.push(v);
    }
    (q, transpose(&p_cols), rank)
}

pub fn count_nonzero(field: &Field, a: &Matrix) -> usize {
    a.iter().flatten().filter(|v| !field.is_zero(v)).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::field_from_spec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ints(field: &Field, rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect()
    }

    /// Largest independent subset of rows; independence by trying every
    /// nonzero coefficient vector over the finite field.
    fn brute_rank(field: &Field, rows: &Matrix) -> usize {
        let elems = field.elements().unwrap();
        let q = elems.len();
        let n = rows.len();
        let independent = |subset: &[usize]| {
            let total = q.pow(subset.len() as u32);
            (1..total).all(|mut code| {
                let mut acc = vec![field.zero(); rows[0].len()];
                for &r in subset {
                    let c = &elems[code % q];
                    code /= q;
                    for (x, y) in acc.iter_mut().zip(&rows[r]) {
                        *x = field.add(x, &field.mul(c, y));
                    }
                }
                acc.iter().any(|v| !field.is_zero(v))
            })
        };
        (0u32..1 << n)
            .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect::<Vec<_>>())
            .filter(|s| independent(s))
            .map(|s| s.len())
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn identity_has_full_rank() {
        let f = field_from_spec("GF(7)").unwrap();
        assert_eq!(exact_rank(&f, &identity(&f, 3)), 3);
    }

    #[test]
    fn circulant_over_gf2() {
        let f = field_from_spec("GF(2)").unwrap();
        let m = ints(&f, &[&[1, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 1], &[1, 0, 0, 1]]);
        assert_eq!(exact_rank(&f, &m), 3);
        assert_eq!(brute_rank(&f, &m), 3);
    }

    #[test]
    fn rank_agrees_with_independent_subset_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for spec in ["GF(2)", "GF(3)"] {
            let f = field_from_spec(spec).unwrap();
            for _ in 0..300 {
                let r = rand::Rng::gen_range(&mut rng, 1..=5);
                let c = rand::Rng::gen_range(&mut rng, 1..=5);
                let m: Matrix = (0..r).map(|_| (0..c).map(|_| f.random_value(&mut rng)).collect()).collect();
                assert_eq!(exact_rank(&f, &m), brute_rank(&f, &m), "{spec} {m:?}");
            }
        }
        // every 3×3 matrix over GF(2)
        let f = field_from_spec("GF(2)").unwrap();
        for code in 0u32..512 {
            let m: Matrix = (0..3)
                .map(|i| (0..3).map(|j| f.from_i64((code >> (3 * i + j) & 1) as i64)).collect())
                .collect();
            assert_eq!(exact_rank(&f, &m), brute_rank(&f, &m));
        }
    }

    #[test]
    fn strategies_agree() {
        let reg = RankRegistry::default();
        assert_eq!(reg.names(), vec!["gauss", "bareiss", "division-free"]);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for spec in ["Q", "Q(zeta_3)", "Q(zeta_5)", "GF(5)", "GF(2^2)"] {
            let f = field_from_spec(spec).unwrap();
            for _ in 0..60 {
                let n = rand::Rng::gen_range(&mut rng, 1..=5);
                let k = rand::Rng::gen_range(&mut rng, 0..=n);
                // rank-k product of random n×k and k×n factors
                let a: Matrix = (0..n).map(|_| (0..k).map(|_| f.random_value(&mut rng)).collect()).collect();
                let b: Matrix = (0..k).map(|_| (0..n).map(|_| f.random_value(&mut rng)).collect()).collect();
                let m = if k == 0 { vec![vec![f.zero(); n]; n] } else { mat_mul(&f, &a, &b) };
                let expected = reg.get("gauss").unwrap().rank(&f, &m);
                assert!(expected <= k);
                for s in ["bareiss", "division-free"] {
                    let strat = reg.get(s).unwrap();
                    if strat.supports(&f) {
                        assert_eq!(strat.rank(&f, &m), expected, "{s} over {spec}");
                    }
                }
            }
        }
    }

    #[test]
    fn witnesses_and_inverses() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for spec in ["Q", "GF(7)", "Q(zeta_3)"] {
            let f = field_from_spec(spec).unwrap();
            for _ in 0..40 {
                let r = rand::Rng::gen_range(&mut rng, 1..=4);
                let c = rand::Rng::gen_range(&mut rng, 1..=4);
                let mut a: Matrix = (0..r).map(|_| (0..c).map(|_| f.random_value(&mut rng)).collect()).collect();
                if r > 1 {
                    a[r - 1] = a[0].clone();
                }
                let (q, p, rank) = diagonalizing_witness(&f, &a, c);
                assert_eq!(rank, exact_rank(&f, &a));
                let d = mat_mul(&f, &mat_mul(&f, &q, &a), &p);
                for (i, row) in d.iter().enumerate() {
                    for (j, v) in row.iter().enumerate() {
                        let want = if i == j && i < rank { f.one() } else { f.zero() };
                        assert_eq!(*v, want);
                    }
                }
                assert!(!f.is_zero(&determinant(&f, &q)));
                assert!(!f.is_zero(&determinant(&f, &p)));
                let pinv = inverse(&f, &p).unwrap();
                assert_eq!(mat_mul(&f, &p, &pinv), identity(&f, c));
                for v in nullspace(&f, &a, c) {
                    let col: Matrix = v.iter().map(|x| vec![x.clone()]).collect();
                    assert!(mat_mul(&f, &a, &col).iter().all(|row| f.is_zero(&row[0])));
                }
                assert_eq!(nullspace(&f, &a, c).len() + rank, c);
            }
        }
    }

    #[test]
    fn determinant_examples() {
        let q = field_from_spec("Q").unwrap();
        assert_eq!(determinant(&q, &ints(&q, &[&[1, 1], &[1, -1]])), q.from_i64(-2));
        assert_eq!(determinant(&q, &ints(&q, &[&[0, 1], &[1, 0]])), q.from_i64(-1));
        assert!(q.is_zero(&determinant(&q, &ints(&q, &[&[1, 2], &[2, 4]]))));
        assert!(inverse(&q, &ints(&q, &[&[1, 2], &[2, 4]])).is_none());
    }
}
