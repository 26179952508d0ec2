//! Dense symmetric eigensolver: Householder reduction to tridiagonal form
//! followed by the implicit-shift QL iteration.

use crate::error::{invalid, Result};
use crate::matrix::{norm2, RealMatrix};

use super::Spectrum;

/// Entrywise symmetry tolerance accepted by the solver.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Eigenvalues in descending order with orthonormal eigenvectors stored as
/// the columns of `vectors`, in the same order.
#[derive(Clone, Debug)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: RealMatrix,
}

impl Eigen {
    /// `max_j ||A v_j - lambda_j v_j||`.
    pub fn residual(&self, a: &RealMatrix) -> f64 {
        let av = a.mul(&self.vectors);
        (0..self.values.len())
            .map(|j| {
                let r: Vec<f64> = (0..a.rows()).map(|i| av[(i, j)] - self.values[j] * self.vectors[(i, j)]).collect();
                norm2(&r)
            })
            .fold(0.0, f64::max)
    }

    /// `V f(Lambda) V^T` for a scalar function of the eigenvalues.
    pub fn apply_fn(&self, f: impl Fn(f64) -> f64) -> RealMatrix {
        let n = self.values.len();
        let fv: Vec<f64> = self.values.iter().map(|&x| f(x)).collect();
        let scaled = RealMatrix::from_fn(n, n, |i, j| self.vectors[(i, j)] * fv[j]);
        scaled.mul(&self.vectors.transpose())
    }

    /// Coordinates `V^T x`.
    pub fn to_modes(&self, x: &[f64]) -> Vec<f64> {
        self.vectors.transpose().mul_vec(x)
    }

    /// `V c`.
    pub fn from_modes(&self, c: &[f64]) -> Vec<f64> {
        self.vectors.mul_vec(c)
    }

    pub fn spectral_radius(&self) -> f64 {
        self.values.iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

fn check_symmetric(a: &RealMatrix) -> Result<()> {
    if a.rows() != a.cols() {
        return invalid(format!("eigh needs a square matrix, got {}x{}", a.rows(), a.cols()));
    }
    if !a.is_symmetric(SYMMETRY_TOL) {
        return invalid("eigh needs a symmetric matrix");
    }
    Ok(())
}

/// Full eigendecomposition.
pub fn eigen(a: &RealMatrix) -> Result<Eigen> {
    check_symmetric(a)?;
    let (values, vectors) = solve(a, true);
    Ok(Eigen { values, vectors: vectors.expect("vectors requested") })
}

/// Spectrum with the eigenpair residual bound filled in.
pub fn eigh(a: &RealMatrix) -> Result<Spectrum> {
    let e = eigen(a)?;
    let residual = e.residual(a);
    Ok(Spectrum::with_residual(e.values, residual))
}

/// Eigenvalues only; skips the eigenvector updates in the QL sweeps.
pub fn eigvalsh(a: &RealMatrix) -> Result<Spectrum> {
    check_symmetric(a)?;
    Ok(Spectrum::from_values(solve(a, false).0))
}

fn solve(a: &RealMatrix, want_vectors: bool) -> (Vec<f64>, Option<RealMatrix>) {
    let n = a.rows();
    if n == 0 {
        return (Vec::new(), want_vectors.then(|| RealMatrix::zeros(0, 0)));
    }
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    let mut v = Vec::new();
    if want_vectors {
        v = (0..n).map(|i| (0..n).map(|j| 0.5 * (a[(i, j)] + a[(j, i)])).collect()).collect();
        tridiagonalize(&mut v, &mut d, &mut e);
    } else {
        tridiagonalize_values(a, &mut d, &mut e);
    }
    ql_implicit(&mut v, &mut d, &mut e, want_vectors);

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[j].total_cmp(&d[i]));
    let values = order.iter().map(|&i| d[i]).collect();
    let vectors = want_vectors.then(|| RealMatrix::from_fn(n, n, |i, j| v[i][order[j]]));
    (values, vectors)
}

/// Householder reduction; on return `v` holds the accumulated orthogonal
/// transform, `d` the diagonal and `e[1..]` the subdiagonal.
fn tridiagonalize(v: &mut [Vec<f64>], d: &mut [f64], e: &mut [f64]) {
    let n = d.len();
    d.copy_from_slice(&v[n - 1]);

    for i in (1..n).rev() {
        let scale: f64 = d[..i].iter().map(|x| x.abs()).sum();
        let mut h = 0.0;
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[i - 1][j];
                v[i][j] = 0.0;
                v[j][i] = 0.0;
            }
        } else {
            for x in d[..i].iter_mut() {
                *x /= scale;
                h += *x * *x;
            }
            let f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            e[..i].iter_mut().for_each(|x| *x = 0.0);

            for j in 0..i {
                let f = d[j];
                v[j][i] = f;
                let mut g = e[j] + v[j][j] * f;
                for k in j + 1..i {
                    g += v[k][j] * d[k];
                    e[k] += v[k][j] * f;
                }
                e[j] = g;
            }
            let mut f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                let (f, g) = (d[j], e[j]);
                for k in j..i {
                    v[k][j] -= f * e[k] + g * d[k];
                }
                d[j] = v[i - 1][j];
                v[i][j] = 0.0;
            }
        }
        d[i] = h;
    }

    for i in 0..n - 1 {
        v[n - 1][i] = v[i][i];
        v[i][i] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = v[k][i + 1] / h;
            }
            for j in 0..=i {
                let g: f64 = (0..=i).map(|k| v[k][i + 1] * v[k][j]).sum();
                for k in 0..=i {
                    v[k][j] -= g * d[k];
                }
            }
        }
        for row in v.iter_mut().take(i + 1) {
            row[i + 1] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = v[n - 1][j];
        v[n - 1][j] = 0.0;
    }
    v[n - 1][n - 1] = 1.0;
    e[0] = 0.0;
}

/// Householder reduction without accumulating the transform, on a dense
/// row-major copy. Same output layout as [`tridiagonalize`].
fn tridiagonalize_values(a: &RealMatrix, d: &mut [f64], e: &mut [f64]) {
    let n = d.len();
    let mut m: Vec<f64> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| 0.5 * (a[(i, j)] + a[(j, i)])).collect();
    let mut p = vec![0.0; n];
    e[0] = 0.0;
    for k in 0..n.saturating_sub(2) {
        d[k] = m[k * n + k];
        let mut v: Vec<f64> = m[k * n + k + 1..(k + 1) * n].to_vec();
        let norm = norm2(&v);
        if norm == 0.0 {
            e[k + 1] = 0.0;
            continue;
        }
        let alpha = if v[0] > 0.0 { -norm } else { norm };
        e[k + 1] = alpha;
        v[0] -= alpha;
        let vv: f64 = v.iter().map(|x| x * x).sum();
        if vv == 0.0 {
            continue;
        }
        let beta = 2.0 / vv;
        let s = k + 1;
        let w = n - s;
        for i in 0..w {
            let row = &m[(s + i) * n + s..(s + i + 1) * n];
            p[i] = beta * row.iter().zip(&v).map(|(x, y)| x * y).sum::<f64>();
        }
        let kk = 0.5 * beta * p[..w].iter().zip(&v).map(|(x, y)| x * y).sum::<f64>();
        for i in 0..w {
            p[i] -= kk * v[i];
        }
        for i in 0..w {
            let (vi, pi) = (v[i], p[i]);
            let row = &mut m[(s + i) * n + s..(s + i + 1) * n];
            for ((x, &vj), &pj) in row.iter_mut().zip(&v).zip(&p[..w]) {
                *x -= vi * pj + pi * vj;
            }
        }
    }
    if n >= 2 {
        d[n - 2] = m[(n - 2) * n + n - 2];
        e[n - 1] = m[(n - 1) * n + n - 2];
    }
    d[n - 1] = m[n * n - 1];
}

fn ql_implicit(v: &mut [Vec<f64>], d: &mut [f64], e: &mut [f64], want_vectors: bool) {
    let n = d.len();
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    let eps = f64::EPSILON;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            loop {
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let h = g - d[l];
                for x in d[l + 2..].iter_mut() {
                    *x -= h;
                }
                f += h;

                p = d[m];
                let (mut c, mut c2, mut c3) = (1.0, 1.0, 1.0);
                let el1 = e[l + 1];
                let (mut s, mut s2) = (0.0, 0.0);
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    let h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if want_vectors {
                        for row in v.iter_mut() {
                            let h = row[i + 1];
                            row[i + 1] = s * row[i] + c * h;
                            row[i] = c * row[i] - s * h;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
}
