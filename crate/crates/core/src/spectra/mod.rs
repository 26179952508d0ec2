//! Spectra of the operators and the spectral checks built on them.

mod eigh;

pub use eigh::{eigen, eigh, eigvalsh, Eigen, SYMMETRY_TOL};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::Complex;
use crate::error::{invalid, Error, Result};
use crate::exact;
use crate::matrix::{IntegerMatrix, RealMatrix};
use crate::operators::{coboundary_block, hodge_block, DegreeSequence};
use crate::report::Verdict;

/// Default zero threshold for sign classification, relative to `||A||_inf`.
pub const ZERO_TOL: f64 = 1e-8;

/// Descending eigenvalues with their cumulative sums `S_k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    values: Vec<f64>,
    cumulative: Vec<f64>,
    residual_bound: Option<f64>,
}

impl Spectrum {
    pub fn from_values(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        let cumulative = values
            .iter()
            .scan(0.0, |s, &x| {
                *s += x;
                Some(*s)
            })
            .collect();
        Spectrum { values, cumulative, residual_bound: None }
    }

    pub(crate) fn with_residual(values: Vec<f64>, residual: f64) -> Self {
        Spectrum { residual_bound: Some(residual), ..Self::from_values(values) }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `S_1, ..., S_n`.
    pub fn cumulative(&self) -> &[f64] {
        &self.cumulative
    }

    pub fn residual_bound(&self) -> Option<f64> {
        self.residual_bound
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn spectral_radius(&self) -> f64 {
        match (self.values.first(), self.values.last()) {
            (Some(a), Some(b)) => a.abs().max(b.abs()),
            _ => 0.0,
        }
    }

    /// Groups eigenvalues closer than `tol` and returns `(value, multiplicity)`.
    pub fn multiplicities(&self, tol: f64) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize)> = Vec::new();
        for &x in &self.values {
            match out.last_mut() {
                Some((v, m)) if (*v - x).abs() <= tol => *m += 1,
                _ => out.push((x, 1)),
            }
        }
        out
    }

    /// `max_j |lambda_j + lambda_{n+1-j}|`; zero for a spectrum symmetric about 0.
    pub fn pairing_defect(&self) -> f64 {
        let n = self.values.len();
        (0..n).map(|j| (self.values[j] + self.values[n - 1 - j]).abs()).fold(0.0, f64::max)
    }

    /// CSV with columns `index,lambda,cumulative` (1-based index).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,lambda,cumulative\n");
        for (j, (l, s)) in self.values.iter().zip(&self.cumulative).enumerate() {
            out.push_str(&format!("{},{},{}\n", j + 1, l, s));
        }
        out
    }
}

pub fn spectrum_of(m: &IntegerMatrix) -> Spectrum {
    eigvalsh(&m.to_real()).expect("operators of a complex are symmetric")
}

/// Betti numbers `b_0, ..., b_q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiVector(pub Vec<usize>);

impl BettiVector {
    pub fn euler_characteristic(&self) -> i64 {
        self.0.iter().enumerate().map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
    }
}

/// Exact Betti numbers, `b_k = f_k - rank(H_k)`. Since `d` squares to zero
/// the ranges of the two summands of `H_k` are orthogonal, so
/// `rank(H_k) = rank(d_k) + rank(d_{k-1})` and only the sparse coboundary
/// blocks are eliminated.
pub fn betti(g: &Complex) -> BettiVector {
    let Some(q) = g.dimension() else { return BettiVector(Vec::new()) };
    let ranks: Vec<usize> = (0..q).map(|k| exact::rank(&coboundary_block(g, k))).collect();
    let f = g.f_vector();
    BettiVector(
        (0..=q)
            .map(|k| f.0[k] - ranks.get(k).copied().unwrap_or(0) - if k > 0 { ranks[k - 1] } else { 0 })
            .collect(),
    )
}

/// Betti numbers from the exact rank of each full Hodge block.
pub fn betti_from_hodge_blocks(g: &Complex) -> BettiVector {
    let Some(q) = g.dimension() else { return BettiVector(Vec::new()) };
    BettiVector(
        (0..=q)
            .map(|k| {
                let h = hodge_block(g, k).expect("k within dimension");
                h.rows() - exact::rank(&h)
            })
            .collect(),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub positives: usize,
    pub negatives: usize,
    pub zeros: usize,
}

impl Signature {
    pub fn index(&self) -> i64 {
        self.positives as i64 - self.negatives as i64
    }
}

pub fn signature(spec: &Spectrum, zero_tol: f64) -> Signature {
    let mut s = Signature { positives: 0, negatives: 0, zeros: 0 };
    for &x in spec.values() {
        if x.abs() <= zero_tol {
            s.zeros += 1;
        } else if x > 0.0 {
            s.positives += 1;
        } else {
            s.negatives += 1;
        }
    }
    s
}

/// Cauchy interlacing `lambda_k >= mu_k >= lambda_{k+r}` for the spectrum
/// `mu` of a principal submatrix of order `r` less.
pub fn interlace_check(outer: &Spectrum, inner: &Spectrum, tol: f64) -> Result<Verdict> {
    if inner.len() >= outer.len() {
        return Err(Error::SizeMismatch { expected: outer.len().saturating_sub(1), found: inner.len() });
    }
    let r = outer.len() - inner.len();
    let (l, m) = (outer.values(), inner.values());
    let margin = (0..m.len()).map(|k| (l[k] - m[k]).min(m[k] - l[k + r])).fold(f64::INFINITY, f64::min);
    Ok(Verdict::margin("interlacing", if m.is_empty() { 0.0 } else { margin }, tol))
}

/// `lambda_j <= d_j` for every `j`.
pub fn degree_bound_check(spec: &Spectrum, degs: &DegreeSequence, tol: f64) -> Result<Verdict> {
    if spec.len() != degs.values().len() {
        return Err(Error::SizeMismatch { expected: spec.len(), found: degs.values().len() });
    }
    let margin = spec
        .values()
        .iter()
        .zip(degs.values())
        .map(|(l, &d)| d as f64 - l)
        .fold(if spec.is_empty() { 0.0 } else { f64::INFINITY }, f64::min);
    Ok(Verdict::margin("degree-bound", margin, tol))
}

/// Spectral-sum margins `S_k(a) - S_k(b)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LoewnerMargins {
    pub margins: Vec<f64>,
}

impl LoewnerMargins {
    /// `(k, margin)` with `k` 1-based, at the smallest margin.
    pub fn min(&self) -> Option<(usize, f64)> {
        self.margins.iter().copied().enumerate().min_by(|a, b| a.1.total_cmp(&b.1)).map(|(k, m)| (k + 1, m))
    }

    pub fn nonnegative(&self, tol: f64) -> bool {
        self.min().is_none_or(|(_, m)| m >= -tol)
    }
}

pub fn loewner_compare(a: &Spectrum, b: &Spectrum) -> Result<LoewnerMargins> {
    if a.len() != b.len() {
        return Err(Error::SizeMismatch { expected: a.len(), found: b.len() });
    }
    Ok(LoewnerMargins { margins: a.cumulative().iter().zip(b.cumulative()).map(|(x, y)| x - y).collect() })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct McKeanSinger {
    /// `str(H^m)` for `m = 0..=n_max`.
    pub supertraces: Vec<i64>,
    pub euler_characteristic: i64,
}

impl McKeanSinger {
    pub fn pass(&self) -> bool {
        self.supertraces.first() == Some(&self.euler_characteristic) && self.supertraces[1..].iter().all(|&s| s == 0)
    }
}

/// Exact supertraces `str(H^m) = sum_x w(x) H^m(x, x)`, computed block by block.
pub fn mckean_singer_check(g: &Complex, n_max: usize) -> Result<McKeanSinger> {
    let mut supertraces = vec![0i64; n_max + 1];
    for k in 0..=g.dimension().unwrap_or(0) {
        if g.is_empty() {
            break;
        }
        let h = hodge_block(g, k)?;
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let mut power = IntegerMatrix::identity(h.rows());
        for st in supertraces.iter_mut() {
            *st += sign * power.trace();
            power = power.checked_mul(&h)?;
        }
    }
    Ok(McKeanSinger { supertraces, euler_characteristic: g.euler_characteristic() })
}

/// Analytic torsion `prod_k Det(H_k)^(k (-1)^(k+1))` with exact
/// pseudo-determinants.
pub fn analytic_torsion(g: &Complex) -> BigRational {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for k in 1..=g.dimension().unwrap_or(0) {
        let pdet = exact::pseudo_determinant(&hodge_block(g, k).expect("k within dimension"));
        let p = pdet.pow(k as u32);
        if k % 2 == 1 {
            num *= p;
        } else {
            den *= p;
        }
    }
    BigRational::new(num, den)
}

/// `sum lambda^(-s)` over eigenvalues above `zero_tol`.
pub fn zeta(spec: &Spectrum, s: f64, zero_tol: f64) -> f64 {
    spec.values().iter().filter(|&&x| x > zero_tol).map(|x| x.powf(-s)).sum()
}

/// Unique dominant eigenvalue and primitivity of a nonnegative matrix.
pub fn perron_check(m: &IntegerMatrix, spec: &Spectrum, gap_tol: f64) -> Result<Verdict> {
    if m.row_iter().flatten().any(|&x| x < 0) {
        return invalid("Perron check needs a nonnegative matrix");
    }
    let gap = match spec.values() {
        [a, b, ..] => a - b,
        [_] => f64::INFINITY,
        [] => return Ok(Verdict::exact("perron", false)),
    };
    let power = primitive_power(m);
    let mut v = Verdict::margin("perron", gap - gap_tol, 0.0);
    v.pass = v.pass && gap > gap_tol && power.is_some();
    v.witness = Some(serde_json::json!({ "gap": gap, "positive_power": power }));
    Ok(v)
}

/// Smallest `r <= n` with `M^r` entrywise positive.
pub fn primitive_power(m: &IntegerMatrix) -> Option<usize> {
    let n = m.rows();
    let words = n.div_ceil(64).max(1);
    let pattern: Vec<Vec<u64>> = m
        .row_iter()
        .map(|row| {
            let mut bits = vec![0u64; words];
            for (j, &x) in row.iter().enumerate() {
                if x > 0 {
                    bits[j / 64] |= 1 << (j % 64);
                }
            }
            bits
        })
        .collect();
    let full = |rows: &[Vec<u64>]| {
        rows.iter().all(|r| (0..n).all(|j| r[j / 64] >> (j % 64) & 1 == 1))
    };
    let mut current = pattern.clone();
    for r in 1..=n {
        if full(&current) {
            return Some(r);
        }
        current = current
            .iter()
            .map(|row| {
                let mut out = vec![0u64; words];
                for k in 0..n {
                    if row[k / 64] >> (k % 64) & 1 == 1 {
                        for (o, p) in out.iter_mut().zip(&pattern[k]) {
                            *o |= p;
                        }
                    }
                }
                out
            })
            .collect();
    }
    None
}

/// `S_k(L) >= k` for all `k`, a consequence of the unit diagonal.
pub fn schur_check(spec: &Spectrum, tol: f64) -> Verdict {
    let margin = spec
        .cumulative()
        .iter()
        .enumerate()
        .map(|(k, s)| s - (k + 1) as f64)
        .fold(if spec.is_empty() { 0.0 } else { f64::INFINITY }, f64::min);
    Verdict::margin("schur", margin, tol)
}

/// Ky Fan subadditivity `S_k(A + B) <= S_k(A) + S_k(B)`.
pub fn fan_check(sum: &Spectrum, a: &Spectrum, b: &Spectrum, tol: f64) -> Verdict {
    let margin = (0..sum.len())
        .map(|k| a.cumulative()[k] + b.cumulative()[k] - sum.cumulative()[k])
        .fold(if sum.is_empty() { 0.0 } else { f64::INFINITY }, f64::min);
    Verdict::margin("fan", margin, tol)
}

pub fn real_spectrum(m: &RealMatrix) -> Result<Spectrum> {
    eigvalsh(m)
}

/// Exact value `sum 1/lambda` over the nonzero spectrum as `f64`, for
/// cross-checking numerical zeta values at `s = 1`.
pub fn exact_zeta_one(m: &IntegerMatrix) -> f64 {
    let r = exact::reciprocal_eigenvalue_sum(m);
    if r.is_zero() {
        0.0
    } else {
        exact::rational_to_f64(&r)
    }
}
