//! Exact integer and rational linear algebra: fraction-free determinants and
//! ranks, Faddeev–LeVerrier characteristic polynomials, rational kernels.
//!
//! The elimination routines run on `i128` first and restart on `BigInt` when
//! an intermediate value overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::matrix::IntegerMatrix;

/// Dense matrix of exact rationals, row-major as nested vectors.
pub type RationalMatrix = Vec<Vec<BigRational>>;

struct Overflowed;

/// Determinant by Bareiss fraction-free elimination.
pub fn determinant(a: &IntegerMatrix) -> BigInt {
    assert!(a.is_square(), "determinant of a non-square matrix");
    if let Some(d) = unit_pivot_determinant(a) {
        return BigInt::from(d);
    }
    match bareiss_i128(a) {
        Ok(d) => BigInt::from(d),
        Err(Overflowed) => bareiss_big(a),
    }
}

/// Elimination restricted to pivots `±1`, where no division is needed and
/// every entry stays integral. Gives up (`None`) when some column has no unit
/// pivot or when a running bound on the entries could leave `i64`. The
/// connection matrix in basis order eliminates this way, since its leading
/// principal minors are determinants of subcomplexes.
fn unit_pivot_determinant(a: &IntegerMatrix) -> Option<i64> {
    const LIMIT: u64 = 1 << 62;
    let n = a.rows();
    let mut m: Vec<i64> = a.row_iter().flatten().copied().collect();
    let mut bound = a.max_abs();
    let mut sign = 1i64;
    for k in 0..n {
        let p = (k..n).find(|&i| m[i * n + k].abs() == 1)?;
        if p != k {
            for j in 0..n {
                m.swap(k * n + j, p * n + j);
            }
            sign = -sign;
        }
        let pivot = m[k * n + k];
        sign *= pivot;
        let (top, rest) = m.split_at_mut((k + 1) * n);
        let pivot_row = &top[k * n + k + 1..(k + 1) * n];
        let row_max = pivot_row.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0);
        let col_max = rest.chunks(n).map(|r| r[k].unsigned_abs()).max().unwrap_or(0);
        bound = bound.checked_add(row_max.checked_mul(col_max)?)?;
        if bound >= LIMIT {
            return None;
        }
        for row in rest.chunks_mut(n) {
            let f = row[k] * pivot;
            if f != 0 {
                for (x, &y) in row[k + 1..].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
            row[k] = 0;
        }
    }
    Some(sign)
}

fn bareiss_i128(a: &IntegerMatrix) -> Result<i128, Overflowed> {
    let n = a.rows();
    let mut m: Vec<Vec<i128>> = a.row_iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(p) => {
                    m.swap(k, p);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        let (top, rest) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = pivot_row[k];
        for row in rest.iter_mut() {
            let lead = row[k];
            for j in k + 1..n {
                let t = pivot
                    .checked_mul(row[j])
                    .and_then(|x| lead.checked_mul(pivot_row[j]).and_then(|y| x.checked_sub(y)))
                    .ok_or(Overflowed)?;
                row[j] = t / prev;
            }
            row[k] = 0;
        }
        prev = pivot;
    }
    Ok(if n == 0 { 1 } else { sign * m[n - 1][n - 1] })
}

fn bareiss_big(a: &IntegerMatrix) -> BigInt {
    let n = a.rows();
    let mut m: Vec<Vec<BigInt>> = a.row_iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(p) => {
                    m.swap(k, p);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let (top, rest) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest.iter_mut() {
            let lead = row[k].clone();
            for j in k + 1..n {
                let t = &pivot_row[k] * &row[j] - &lead * &pivot_row[j];
                row[j] = t / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = pivot_row[k].clone();
    }
    let d = if n == 0 { BigInt::one() } else { m[n - 1][n - 1].clone() };
    if negate {
        -d
    } else {
        d
    }
}

/// Rank over the rationals.
pub fn rank(a: &IntegerMatrix) -> usize {
    let rows: Vec<Vec<i128>> = a.row_iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    match echelon_rank_i128(rows) {
        Ok(r) => r,
        Err(Overflowed) => {
            let rows = a.row_iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            echelon_rank_big(rows)
        }
    }
}

fn echelon_rank_i128(mut rows: Vec<Vec<i128>>) -> Result<usize, Overflowed> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        // Smallest nonzero pivot keeps entries small.
        let Some(p) = (r..rows.len()).filter(|&i| rows[i][c] != 0).min_by_key(|&i| rows[i][c].unsigned_abs())
        else {
            continue;
        };
        rows.swap(r, p);
        let (top, rest) = rows.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = pivot_row[c];
        for row in rest.iter_mut() {
            let lead = row[c];
            if lead == 0 {
                continue;
            }
            let g = pivot.gcd(&lead);
            let (pm, lm) = (pivot / g, lead / g);
            let mut content = 0i128;
            for j in c..cols {
                let t = pm
                    .checked_mul(row[j])
                    .and_then(|x| lm.checked_mul(pivot_row[j]).and_then(|y| x.checked_sub(y)))
                    .ok_or(Overflowed)?;
                row[j] = t;
                content = content.gcd(&t);
            }
            if content > 1 {
                for x in row[c..].iter_mut() {
                    *x /= content;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    Ok(r)
}

fn echelon_rank_big(mut rows: Vec<Vec<BigInt>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).filter(|&i| !rows[i][c].is_zero()).min_by_key(|&i| rows[i][c].abs()) else {
            continue;
        };
        rows.swap(r, p);
        let (top, rest) = rows.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let g = pivot_row[c].gcd(&row[c]);
            let pm = &pivot_row[c] / &g;
            let lm = &row[c] / &g;
            let mut content = BigInt::zero();
            for j in c..cols {
                row[j] = &pm * &row[j] - &lm * &pivot_row[j];
                content = content.gcd(&row[j]);
            }
            if content > BigInt::one() {
                for x in row[c..].iter_mut() {
                    *x = &*x / &content;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Characteristic polynomial `det(xI - A)` by Faddeev–LeVerrier, as
/// coefficients `c_0, ..., c_n` in ascending degree with `c_n = 1`.
pub fn characteristic_polynomial(a: &IntegerMatrix) -> Vec<BigInt> {
    assert!(a.is_square(), "characteristic polynomial of a non-square matrix");
    let n = a.rows();
    let big: Vec<Vec<BigInt>> = a.row_iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    // M_1 = I, c_{n-k} = -tr(A M_k) / k, M_{k+1} = A M_k + c_{n-k} I
    let mut m: Vec<Vec<BigInt>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    for k in 1..=n {
        let am = big_mul(&big, &m);
        let trace: BigInt = (0..n).map(|i| am[i][i].clone()).sum();
        let (c, rem) = (-trace).div_rem(&BigInt::from(k));
        debug_assert!(rem.is_zero(), "Faddeev-LeVerrier division is exact for integer matrices");
        coeffs[n - k] = c.clone();
        m = am;
        for (i, row) in m.iter_mut().enumerate() {
            row[i] += &c;
        }
    }
    coeffs
}

fn big_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let cols = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![BigInt::zero(); cols]; n];
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..cols {
                if !b[k][j].is_zero() {
                    out[i][j] += aik * &b[k][j];
                }
            }
        }
    }
    out
}

/// Greatest common divisor of two polynomials over the rationals, monic,
/// coefficients in ascending degree.
pub fn polynomial_gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let trim = |mut v: Vec<BigRational>| {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    };
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let lead = b.last().expect("nonempty").clone();
        while a.len() >= b.len() {
            let f = a.last().expect("nonempty").clone() / &lead;
            let shift = a.len() - b.len();
            for (i, c) in b.iter().enumerate() {
                a[shift + i] -= &f * c;
            }
            a.pop();
            a = trim(a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(lead) = a.last().cloned() {
        for c in a.iter_mut() {
            *c /= &lead;
        }
    }
    a
}

pub fn polynomial_eval(p: &[BigRational], x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// Whether `p` has a root of multiplicity at least two in `[lo, hi]`,
/// detected as a sign change of `gcd(p, p')`. Roots of even multiplicity in
/// the gcd are not detected.
pub fn repeated_root_in(p: &[BigInt], lo: &BigRational, hi: &BigRational) -> bool {
    let p: Vec<BigRational> = p.iter().map(|c| BigRational::from_integer(c.clone())).collect();
    let dp: Vec<BigRational> =
        p.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from_integer(BigInt::from(i))).collect();
    let q = polynomial_gcd(&p, &dp);
    if q.len() < 2 {
        return false;
    }
    let (a, b) = (polynomial_eval(&q, lo), polynomial_eval(&q, hi));
    a.is_zero() || b.is_zero() || a.is_positive() != b.is_positive()
}

/// Number of roots above `c` of a real-rooted integer polynomial, such as
/// the characteristic polynomial of a symmetric matrix. Descartes' rule of
/// signs is exact for real-rooted polynomials, applied here to the integer
/// polynomial `2^(e n) p((z + a) / 2^e)` where `c = a / 2^e`.
pub fn roots_above(p: &[BigInt], c: &BigRational) -> usize {
    let n = p.len() - 1;
    let (a, den) = (c.numer(), c.denom());
    // r_i = p_i den^(n - i), then a Taylor shift by a
    let mut r: Vec<BigInt> = p.iter().enumerate().map(|(i, pi)| pi * num_traits::pow(den.clone(), n - i)).collect();
    for i in 0..n {
        for j in (i..n).rev() {
            let add = a * &r[j + 1];
            r[j] += add;
        }
    }
    let signs: Vec<bool> = r.iter().filter(|x| !x.is_zero()).map(|x| x.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Certified intervals `[lo_j, hi_j]` around approximate eigenvalues of a
/// symmetric matrix, sorted descending, widened by `delta`. `None` when an
/// interval cannot be certified.
pub fn eigenvalue_enclosures(a: &IntegerMatrix, approx: &[f64], delta: f64) -> Option<Vec<(BigRational, BigRational)>> {
    let p = characteristic_polynomial(a);
    let mut out = Vec::with_capacity(approx.len());
    for (j, &x) in approx.iter().enumerate() {
        let lo = BigRational::from_float(x - delta)?;
        let hi = BigRational::from_float(x + delta)?;
        // lambda_j <= hi iff at most j eigenvalues exceed hi; lambda_j > lo iff at least j + 1 exceed lo
        if roots_above(&p, &hi) > j || roots_above(&p, &lo) < j + 1 {
            return None;
        }
        out.push((lo, hi));
    }
    Some(out)
}

/// Product of the nonzero eigenvalues, read off the characteristic
/// polynomial: if `p(x) = x^m q(x)` with `q(0) != 0` then the product is
/// `(-1)^(n-m) q(0)`. Equals 1 for the zero matrix.
pub fn pseudo_determinant(a: &IntegerMatrix) -> BigInt {
    let p = characteristic_polynomial(a);
    let n = a.rows();
    let m = p.iter().position(|c| !c.is_zero()).expect("leading coefficient is 1");
    if (n - m).is_multiple_of(2) {
        p[m].clone()
    } else {
        -p[m].clone()
    }
}

/// Sum of reciprocals of the nonzero eigenvalues: `e_{r-1} / e_r` in terms of
/// elementary symmetric functions of the nonzero spectrum.
pub fn reciprocal_eigenvalue_sum(a: &IntegerMatrix) -> BigRational {
    let p = characteristic_polynomial(a);
    let m = p.iter().position(|c| !c.is_zero()).expect("leading coefficient is 1");
    if m + 1 >= p.len() {
        return BigRational::zero();
    }
    // q(x) = p(x)/x^m = x^r + ... + q_1 x + q_0, sum 1/lambda = -q_1/q_0
    BigRational::new(-p[m + 1].clone(), p[m].clone())
}

pub fn rational(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

pub fn to_rational(a: &IntegerMatrix) -> RationalMatrix {
    a.row_iter().map(|r| r.iter().map(|&x| rational(x)).collect()).collect()
}

/// Basis of the right kernel `{v : A v = 0}` from the reduced row echelon
/// form. Each basis vector is scaled to have integer entries.
pub fn kernel_basis(a: &IntegerMatrix) -> Vec<Vec<BigRational>> {
    let cols = a.cols();
    let mut m = to_rational(a);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][f].clone();
            }
            let denom = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            v.iter().map(|x| x * BigRational::from_integer(denom.clone())).collect()
        })
        .collect()
}

pub fn rational_mul(a: &RationalMatrix, b: &RationalMatrix) -> RationalMatrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .filter(|(x, _)| !x.is_zero())
                        .map(|(x, brow)| x * &brow[j])
                        .fold(BigRational::zero(), |s, t| s + t)
                })
                .collect()
        })
        .collect()
}

pub fn rational_transpose(a: &RationalMatrix) -> RationalMatrix {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Inverse by Gauss–Jordan; `None` when singular.
pub fn rational_inverse(a: &RationalMatrix) -> Option<RationalMatrix> {
    let n = a.len();
    let mut m: RationalMatrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[c].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != c && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn rational_trace(a: &RationalMatrix) -> BigRational {
    (0..a.len()).map(|i| a[i][i].clone()).fold(BigRational::zero(), |s, t| s + t)
}

/// Coefficients of `det(I - sA)` in ascending powers of `s`, by expanding
/// the characteristic polynomial of a rational matrix via Faddeev–LeVerrier.
pub fn rational_reverse_charpoly(a: &RationalMatrix) -> Vec<BigRational> {
    let n = a.len();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut m: RationalMatrix = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    for k in 1..=n {
        let am = rational_mul(a, &m);
        let c = -rational_trace(&am) / BigRational::from_integer(BigInt::from(k));
        coeffs[n - k] = c.clone();
        m = am;
        for (i, row) in m.iter_mut().enumerate() {
            row[i] += &c;
        }
    }
    // det(xI - A) = sum c_j x^j; det(I - sA) = s^n det(I/s - A) = sum c_j s^(n-j)
    coeffs.reverse();
    coeffs
}

/// Converts an exact rational to the nearest `f64`.
pub fn rational_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> IntegerMatrix {
        IntegerMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn permutation_expansion(a: &IntegerMatrix) -> i64 {
        fn go(a: &IntegerMatrix, row: usize, used: &mut Vec<bool>) -> i64 {
            let n = a.rows();
            if row == n {
                return 1;
            }
            let mut total = 0;
            let mut sign = 1;
            for c in 0..n {
                if used[c] {
                    continue;
                }
                used[c] = true;
                total += sign * a[(row, c)] * go(a, row + 1, used);
                used[c] = false;
                sign = -sign;
            }
            total
        }
        go(a, 0, &mut vec![false; a.rows()])
    }

    #[test]
    fn determinant_small() {
        assert_eq!(determinant(&m(&[&[1, 0, 1], &[0, 1, 1], &[1, 1, 1]])), BigInt::from(-1));
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(determinant(&m(&[&[1, 2], &[2, 4]])), BigInt::zero());
        assert_eq!(determinant(&IntegerMatrix::zeros(0, 0)), BigInt::one());
    }

    #[test]
    fn determinant_overflow_falls_back_to_bigint() {
        let n = 30;
        let a = IntegerMatrix::from_fn(n, n, |i, j| if i == j { 1_000_000_007 } else { (i * 7 + j * 3) as i64 % 11 });
        let fast = bareiss_i128(&a);
        assert!(fast.is_err());
        let d = determinant(&a);
        assert!(d > BigInt::from(10).pow(200));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&m(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank(&IntegerMatrix::identity(5)), 5);
        assert_eq!(rank(&m(&[&[-1, 1, 0], &[0, -1, 1], &[-1, 0, 1]])), 2);
    }

    #[test]
    fn charpoly_of_edge_dirac() {
        // D of the closed edge: x^3 - 2x
        let d = m(&[&[0, 0, -1], &[0, 0, 1], &[-1, 1, 0]]);
        let p = characteristic_polynomial(&d);
        assert_eq!(p, [0, -2, 0, 1].map(BigInt::from).to_vec());
        assert_eq!(pseudo_determinant(&d), BigInt::from(-2));
    }

    #[test]
    fn kernel_of_path_laplacian() {
        let k = m(&[&[1, -1, 0], &[-1, 2, -1], &[0, -1, 1]]);
        let basis = kernel_basis(&k);
        assert_eq!(basis.len(), 1);
        assert!(basis[0].iter().all(|x| *x == basis[0][0]));
        assert_eq!(pseudo_determinant(&k), BigInt::from(3));
        assert_eq!(reciprocal_eigenvalue_sum(&k), BigRational::new(BigInt::from(4), BigInt::from(3)));
    }

    #[test]
    fn reverse_charpoly() {
        let a = vec![vec![rational(2), rational(0)], vec![rational(0), rational(3)]];
        // (1-2s)(1-3s) = 1 - 5s + 6s^2
        assert_eq!(rational_reverse_charpoly(&a), vec![rational(1), rational(-5), rational(6)]);
    }

    proptest! {
        #[test]
        fn bareiss_matches_permutation_expansion(entries in proptest::collection::vec(-3i64..=3, 16)) {
            let a = IntegerMatrix::from_fn(4, 4, |i, j| entries[4 * i + j]);
            prop_assert_eq!(determinant(&a), BigInt::from(permutation_expansion(&a)));
            prop_assert_eq!(bareiss_big(&a), BigInt::from(permutation_expansion(&a)));
        }

        #[test]
        fn charpoly_constant_term_is_signed_determinant(entries in proptest::collection::vec(-3i64..=3, 16)) {
            let a = IntegerMatrix::from_fn(4, 4, |i, j| entries[4 * i + j]);
            let p = characteristic_polynomial(&a);
            prop_assert_eq!(p[0].clone(), determinant(&a));
            prop_assert_eq!(-p[3].clone(), BigInt::from(a.trace()));
        }

        #[test]
        fn rank_plus_nullity(entries in proptest::collection::vec(-2i64..=2, 20)) {
            let a = IntegerMatrix::from_fn(4, 5, |i, j| entries[5 * i + j]);
            let basis = kernel_basis(&a);
            prop_assert_eq!(rank(&a) + basis.len(), 5);
            let q = to_rational(&a);
            for v in &basis {
                let col: RationalMatrix = v.iter().map(|x| vec![x.clone()]).collect();
                prop_assert!(rational_mul(&q, &col).iter().all(|r| r[0].is_zero()));
            }
        }
    }

    #[test]
    fn repeated_roots() {
        let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        // (x - 1)^2 (x + 2) = x^3 - 3x + 2
        let p: Vec<BigInt> = [2, -3, 0, 1].iter().map(|&c| BigInt::from(c)).collect();
        assert!(repeated_root_in(&p, &r(9, 10), &r(11, 10)));
        assert!(!repeated_root_in(&p, &r(-21, 10), &r(-19, 10)));
        let g = polynomial_gcd(&[r(-1, 1), r(0, 1), r(1, 1)], &[r(1, 1), r(1, 1)]);
        assert_eq!(g, vec![r(1, 1), r(1, 1)]);
        assert!(!repeated_root_in(&characteristic_polynomial(&IntegerMatrix::identity(1)), &r(0, 1), &r(2, 1)));
    }

    #[test]
    fn descartes_counts_and_enclosures() {
        let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        // diag(3, 1, 1, -2)
        let a = IntegerMatrix::from_fn(4, 4, |i, j| if i == j { [3, 1, 1, -2][i] } else { 0 });
        let p = characteristic_polynomial(&a);
        assert_eq!(roots_above(&p, &r(0, 1)), 3);
        assert_eq!(roots_above(&p, &r(1, 1)), 1);
        assert_eq!(roots_above(&p, &r(5, 4)), 1);
        assert_eq!(roots_above(&p, &r(-3, 1)), 4);
        assert_eq!(roots_above(&p, &r(7, 2)), 0);
        let e = eigenvalue_enclosures(&a, &[3.0, 1.0, 1.0, -2.0], 1e-9).unwrap();
        assert!(e[3].0 < r(-2, 1) && r(-2, 1) < e[3].1);
        assert!(eigenvalue_enclosures(&a, &[3.0, 1.1, 1.0, -2.0], 1e-9).is_none());
    }
}
