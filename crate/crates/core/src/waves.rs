//! Wave equations driven by `D`, `L` or `g`: continuous-time d'Alembert
//! solutions, boundary-value inversion and the discrete symplectic map.

use std::collections::VecDeque;
use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::complex::Complex;
use crate::error::{invalid, Error, Result};
use crate::matrix::RealMatrix;
use crate::operators::OperatorKind;
use crate::report::Verdict;
use crate::spectra::{eigen, Eigen};

/// Slack subtracted from open norm bounds.
pub const NORM_MARGIN: f64 = 1e-12;
/// Entries below this magnitude count as zero in support checks.
pub const SUPPORT_TOL: f64 = 1e-14;

/// Amplitude and velocity per simplex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WaveState {
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

impl WaveState {
    pub fn new(u: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        if u.len() != v.len() {
            return Err(Error::SizeMismatch { expected: u.len(), found: v.len() });
        }
        Ok(WaveState { u, v })
    }

    /// `(e_i, 0)`.
    pub fn impulse(n: usize, i: usize) -> Self {
        let mut u = vec![0.0; n];
        u[i] = 1.0;
        WaveState { u, v: vec![0.0; n] }
    }

    pub fn len(&self) -> usize {
        self.u.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_empty()
    }
}

/// Which operator drives the wave, and the factor `c` applied to it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatorChoice {
    pub which: OperatorKind,
    pub scale: f64,
}

impl OperatorChoice {
    pub fn new(which: OperatorKind, scale: f64) -> Result<Self> {
        if which == OperatorKind::Hodge {
            return invalid("waves are driven by D, L or g");
        }
        if !(scale.is_finite() && scale > 0.0) {
            return invalid(format!("scale must be positive, got {scale}"));
        }
        Ok(OperatorChoice { which, scale })
    }

    /// Picks `c` so that `rho(cA) = target`.
    pub fn normalized(which: OperatorKind, g: &Complex, target: f64) -> Result<Self> {
        let rho = crate::spectra::eigvalsh(&which.build(g).to_real())?.spectral_radius();
        Self::new(which, if rho > 0.0 { target / rho } else { 1.0 })
    }

    pub fn matrix(&self, g: &Complex) -> RealMatrix {
        self.which.build(g).to_real().scale(self.scale)
    }
}

/// Default `rho(cA)` for the symplectic map.
pub const SYMPLECTIC_RADIUS: f64 = 0.45;
/// Default `rho(cA)` for boundary problems.
pub const BOUNDARY_RADIUS: f64 = 1.5;

fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        x.sin() / x
    }
}

fn check_len(n: usize, x: &[f64]) -> Result<()> {
    if x.len() != n {
        return Err(Error::SizeMismatch { expected: n, found: x.len() });
    }
    Ok(())
}

fn require_radius(e: &Eigen, bound: f64) -> Result<()> {
    let rho = e.spectral_radius();
    if rho >= bound - NORM_MARGIN {
        return Err(Error::NormViolation { norm: rho, bound });
    }
    Ok(())
}

/// d'Alembert solution `u(t) = cos(At) u0 + t sinc(At) v0` from one
/// eigendecomposition.
#[derive(Clone, Debug)]
pub struct WaveSolver {
    eigen: Eigen,
}

impl WaveSolver {
    pub fn new(a: &RealMatrix) -> Result<Self> {
        Ok(WaveSolver { eigen: eigen(a)? })
    }

    pub fn solve(&self, u0: &[f64], v0: &[f64], t: f64) -> Result<WaveState> {
        let n = self.eigen.values.len();
        check_len(n, u0)?;
        check_len(n, v0)?;
        let (a, b) = (self.eigen.to_modes(u0), self.eigen.to_modes(v0));
        let mut u = vec![0.0; n];
        let mut v = vec![0.0; n];
        for (j, &l) in self.eigen.values.iter().enumerate() {
            let (s, c) = (l * t).sin_cos();
            u[j] = c * a[j] + t * sinc(l * t) * b[j];
            v[j] = -l * s * a[j] + c * b[j];
        }
        Ok(WaveState { u: self.eigen.from_modes(&u), v: self.eigen.from_modes(&v) })
    }
}

pub fn wave_solve(a: &RealMatrix, u0: &[f64], v0: &[f64], t: f64) -> Result<WaveState> {
    WaveSolver::new(a)?.solve(u0, v0, t)
}

/// `max_t ||u''(t) + A^2 u(t)||` with a fourth-order central difference of step `h`.
pub fn dalembert_residual(a: &RealMatrix, u0: &[f64], v0: &[f64], times: &[f64], h: f64) -> Result<f64> {
    let solver = WaveSolver::new(a)?;
    let mut worst = 0.0f64;
    for &t in times {
        let at = |k: f64| solver.solve(u0, v0, t + k * h).map(|s| s.u);
        let (m2, m1, z, p1, p2) = (at(-2.0)?, at(-1.0)?, at(0.0)?, at(1.0)?, at(2.0)?);
        let a2u = a.mul_vec(&a.mul_vec(&z));
        let r: Vec<f64> = (0..z.len())
            .map(|i| (-m2[i] + 16.0 * m1[i] - 30.0 * z[i] + 16.0 * p1[i] - p2[i]) / (12.0 * h * h) + a2u[i])
            .collect();
        worst = worst.max(crate::matrix::norm2(&r));
    }
    Ok(worst)
}

/// Initial velocity reaching `u1` at time 1 under `cA`:
/// `v0 = sinc(cA)^{-1} (u1 - cos(cA) u0)`. Needs `rho(cA) < pi/2`.
pub fn boundary_solve(a: &RealMatrix, c: f64, u0: &[f64], u1: &[f64]) -> Result<Vec<f64>> {
    let e = eigen(&a.scale(c))?;
    require_radius(&e, FRAC_PI_2)?;
    let n = e.values.len();
    check_len(n, u0)?;
    check_len(n, u1)?;
    let (p, q) = (e.to_modes(u0), e.to_modes(u1));
    let modes: Vec<f64> = e.values.iter().enumerate().map(|(j, &l)| (q[j] - l.cos() * p[j]) / sinc(l)).collect();
    Ok(e.from_modes(&modes))
}

/// The step `(u, v) -> (2Au - v, u)` for `rho(A) < 1`.
#[derive(Clone, Debug)]
pub struct SymplecticMap {
    a: RealMatrix,
    eigen: Eigen,
}

impl SymplecticMap {
    pub fn new(a: &RealMatrix) -> Result<Self> {
        let e = eigen(a)?;
        require_radius(&e, 1.0)?;
        Ok(SymplecticMap { a: a.clone(), eigen: e })
    }

    pub fn step(&self, s: &WaveState) -> WaveState {
        let au = self.a.mul_vec(&s.u);
        WaveState { u: au.iter().zip(&s.v).map(|(x, y)| 2.0 * x - y).collect(), v: s.u.clone() }
    }

    pub fn inverse_step(&self, s: &WaveState) -> WaveState {
        let av = self.a.mul_vec(&s.v);
        WaveState { u: s.v.clone(), v: av.iter().zip(&s.u).map(|(x, y)| 2.0 * x - y).collect() }
    }

    /// States after `0..=steps` steps.
    pub fn evolve(&self, start: &WaveState, steps: usize) -> Vec<WaveState> {
        let mut out = vec![start.clone()];
        for _ in 0..steps {
            out.push(self.step(out.last().expect("nonempty")));
        }
        out
    }

    /// Closed form of the n-th iterate's amplitude,
    /// `cos(n theta) u0 + sin(n theta)/sin(theta) (A u0 - v0)` with `theta = arccos A`.
    pub fn closed_form(&self, s: &WaveState, n: usize) -> Vec<f64> {
        let (a, b) = (self.eigen.to_modes(&s.u), self.eigen.to_modes(&s.v));
        let modes: Vec<f64> = self
            .eigen
            .values
            .iter()
            .enumerate()
            .map(|(j, &l)| {
                let theta = l.acos();
                let nt = n as f64 * theta;
                nt.cos() * a[j] + nt.sin() / theta.sin() * (l * a[j] - b[j])
            })
            .collect();
        self.eigen.from_modes(&modes)
    }

    /// Eigenvalues `lambda ± i sqrt(1 - lambda^2)` of the block map
    /// `[[2A, -I], [I, 0]]`, from the 2x2 block of each eigenmode of `A`.
    pub fn block_eigenvalues(&self) -> Vec<Complex64> {
        self.eigen
            .values
            .iter()
            .flat_map(|&l| {
                // roots of mu^2 - 2 lambda mu + 1
                let disc = Complex64::new(l * l - 1.0, 0.0).sqrt();
                [l + disc, l - disc]
            })
            .collect()
    }
}

pub fn symplectic_step(a: &RealMatrix, s: &WaveState) -> Result<WaveState> {
    Ok(SymplecticMap::new(a)?.step(s))
}

/// Block-map eigenvalues on the unit circle with arguments `±arccos(lambda)`,
/// after confirming that the eigenbasis of `A` reduces the block map to
/// 2x2 blocks.
pub fn block_map_eigenvalue_check(a: &RealMatrix, tol: f64) -> Result<Verdict> {
    let m = SymplecticMap::new(a)?;
    let n = a.rows();
    let v = &m.eigen.vectors;
    let vt_a_v = v.transpose().mul(a).mul(v);
    let reduction = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| (vt_a_v[(i, j)] - if i == j { m.eigen.values[i] } else { 0.0 }).abs())
        .fold(0.0, f64::max);
    let mut worst = reduction;
    for (pair, &l) in m.block_eigenvalues().chunks(2).zip(&m.eigen.values) {
        for mu in pair {
            worst = worst.max((mu.norm() - 1.0).abs());
            worst = worst.max((mu.arg().abs() - l.acos()).abs());
        }
    }
    Ok(Verdict::margin("block-map-unit-circle", tol - worst, 0.0))
}

type CMatrix = Vec<Vec<Complex64>>;

fn cmul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (n, k, m) = (a.len(), b.len(), b.first().map_or(0, Vec::len));
    let mut out = vec![vec![Complex64::new(0.0, 0.0); m]; n];
    for i in 0..n {
        for l in 0..k {
            let x = a[i][l];
            if x != Complex64::new(0.0, 0.0) {
                for j in 0..m {
                    out[i][j] += x * b[l][j];
                }
            }
        }
    }
    out
}

fn complex_fn(e: &Eigen, f: impl Fn(f64) -> Complex64) -> CMatrix {
    let n = e.values.len();
    let fv: Vec<Complex64> = e.values.iter().map(|&x| f(x)).collect();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| fv[k] * e.vectors[(i, k)] * e.vectors[(j, k)]).sum())
                .collect()
        })
        .collect()
}

fn blocks(a: &CMatrix, b: &CMatrix, c: &CMatrix, d: &CMatrix) -> CMatrix {
    let top = a.iter().zip(b).map(|(x, y)| [x.as_slice(), y.as_slice()].concat());
    let bottom = c.iter().zip(d).map(|(x, y)| [x.as_slice(), y.as_slice()].concat());
    top.chain(bottom).collect()
}

fn max_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter().flatten().zip(b.iter().flatten()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// With `U = A + i sqrt(I - A^2)` and `S = [[U*, U], [I, I]]`, checks
/// `U + U* = 2A` and `S diag(U*, U) S^{-1} = [[2A, -I], [I, 0]]`, using the
/// explicit inverse `S^{-1} = [[W, -WU], [-W, WU*]]` with `W = (U* - U)^{-1}`.
pub fn unitary_conjugation_check(a: &RealMatrix, tol: f64) -> Result<Verdict> {
    let e = eigen(a)?;
    require_radius(&e, 1.0)?;
    let n = a.rows();
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let u = complex_fn(&e, |x| Complex64::new(x, (1.0 - x * x).sqrt()));
    let u_star = complex_fn(&e, |x| Complex64::new(x, -(1.0 - x * x).sqrt()));
    let w = complex_fn(&e, |x| Complex64::new(0.0, 0.5 / (1.0 - x * x).sqrt()));
    let real = |m: &RealMatrix| -> CMatrix { (0..n).map(|i| (0..n).map(|j| Complex64::new(m[(i, j)], 0.0)).collect()).collect() };
    let id: CMatrix = (0..n).map(|i| (0..n).map(|j| if i == j { one } else { zero }).collect()).collect();
    let zeros = vec![vec![zero; n]; n];
    let neg = |m: &CMatrix| -> CMatrix { m.iter().map(|r| r.iter().map(|x| -x).collect()).collect() };

    let two_a = real(&a.scale(2.0));
    let sum: CMatrix = u.iter().zip(&u_star).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect();
    let realness = max_diff(&sum, &two_a);

    let s = blocks(&u_star, &u, &id, &id);
    let s_inv = blocks(&w, &neg(&cmul(&w, &u)), &neg(&w), &cmul(&w, &u_star));
    let diag = blocks(&u_star, &zeros, &zeros, &u);
    let b = blocks(&two_a, &neg(&id), &id, &zeros);
    let inverse = max_diff(&cmul(&s, &s_inv), &blocks(&id, &zeros, &zeros, &id));
    let conjugation = max_diff(&cmul(&cmul(&s, &diag), &s_inv), &b);

    let worst = realness.max(inverse).max(conjugation);
    Ok(Verdict::margin("unitary-conjugation", tol - worst, 0.0).with_witness(serde_json::json!({
        "u_plus_u_star": realness,
        "inverse": inverse,
        "conjugation": conjugation,
    })))
}

/// Graph distances from `source` in the interaction graph of `A`.
pub fn interaction_distances(a: &RealMatrix, source: usize) -> Vec<Option<usize>> {
    let n = a.rows();
    let mut dist = vec![None; n];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(x) = queue.pop_front() {
        let d = dist[x].expect("queued vertices have distances");
        for y in 0..n {
            if a[(x, y)] != 0.0 && dist[y].is_none() {
                dist[y] = Some(d + 1);
                queue.push_back(y);
            }
        }
    }
    dist
}

/// After `k` symplectic steps from `(e_source, 0)` the amplitude vanishes
/// beyond interaction distance `k`.
pub fn causality_check(a: &RealMatrix, source: usize, steps: usize) -> Result<Verdict> {
    if source >= a.rows() {
        return invalid(format!("source {source} out of range"));
    }
    let m = SymplecticMap::new(a)?;
    let dist = interaction_distances(a, source);
    let states = m.evolve(&WaveState::impulse(a.rows(), source), steps);
    let mut violation: Option<(usize, usize, f64)> = None;
    let mut largest_outside = 0.0f64;
    for (k, s) in states.iter().enumerate() {
        for (i, &x) in s.u.iter().enumerate() {
            if dist[i].is_none_or(|d| d > k) {
                largest_outside = largest_outside.max(x.abs());
                if x.abs() > SUPPORT_TOL && violation.is_none() {
                    violation = Some((k, i, x));
                }
            }
        }
    }
    let v = Verdict::exact("causality", violation.is_none());
    Ok(match violation {
        Some((k, i, x)) => v.with_witness(serde_json::json!({ "step": k, "simplex": i, "amplitude": x })),
        None => v.with_witness(serde_json::json!({ "largest_outside": largest_outside })),
    })
}

/// Number of entries of `u(t)` above [`SUPPORT_TOL`] for the continuous
/// evolution from `(e_source, 0)`.
pub fn continuous_support(a: &RealMatrix, source: usize, t: f64) -> Result<usize> {
    let s = WaveState::impulse(a.rows(), source);
    Ok(wave_solve(a, &s.u, &s.v, t)?.u.iter().filter(|x| x.abs() > SUPPORT_TOL).count())
}

/// The three scalar discretizations of `exp(-2ihx)`:
/// `exp(-i arcsin(2hx))`, `exp(-2ihx)` and `(1 - ihx)/(1 + ihx)`.
pub fn scalar_discretizations(h: f64, x: f64) -> [Complex64; 3] {
    let i = Complex64::new(0.0, 1.0);
    let hx = h * x;
    [(-i * (2.0 * hx).asin()).exp(), (-2.0 * i * hx).exp(), (1.0 - i * hx) / (1.0 + i * hx)]
}

/// `T_n(A)` by the three-term recurrence against `cos(n arccos A)` for
/// `n <= order`, plus agreement of [`scalar_discretizations`] with
/// `1 - 2ihx - 2h^2x^2` up to `10 |hx|^3` at `(h, x) = (0.01, 0.3)`.
pub fn chebyshev_series_check(a: &RealMatrix, order: usize, tol: f64) -> Result<Verdict> {
    let e = eigen(a)?;
    require_radius(&e, 1.0)?;
    let n = a.rows();
    let mut prev = RealMatrix::identity(n);
    let mut cur = a.clone();
    let mut worst = 0.0f64;
    for k in 0..=order {
        let t_k = if k == 0 { prev.clone() } else { cur.clone() };
        let exact = e.apply_fn(|x| (k as f64 * x.acos()).cos());
        worst = worst.max(t_k.sub(&exact).max_abs());
        if k >= 1 {
            let next = a.mul(&cur).scale(2.0).sub(&prev);
            prev = std::mem::replace(&mut cur, next);
        }
    }

    let (h, x) = (0.01, 0.3);
    let series = Complex64::new(1.0 - 2.0 * h * h * x * x, -2.0 * h * x);
    let bound = 10.0 * (h * x).abs().powi(3);
    let scalar = scalar_discretizations(h, x).iter().map(|z| (z - series).norm()).fold(0.0, f64::max);
    let v = Verdict::margin("chebyshev", (tol - worst).min(bound - scalar), 0.0);
    Ok(v.with_witness(serde_json::json!({ "recurrence": worst, "scalar": scalar, "scalar_bound": bound })))
}

/// CSV with columns `step,simplex_index,u,v`.
pub fn trajectory_csv(states: &[WaveState]) -> String {
    let mut out = String::from("step,simplex_index,u,v\n");
    for (k, s) in states.iter().enumerate() {
        for (i, (u, v)) in s.u.iter().zip(&s.v).enumerate() {
            out.push_str(&format!("{k},{i},{u},{v}\n"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{closure, whitney, Graph};
    use crate::operators::{connection_matrix, dirac};
    use std::f64::consts::SQRT_2;

    fn edge() -> Complex {
        closure(&[[1, 2]]).unwrap()
    }

    /// Classical RK4 on `u' = v, v' = -A^2 u`.
    fn rk4(a: &RealMatrix, u0: &[f64], v0: &[f64], t: f64, steps: usize) -> Vec<f64> {
        let a2 = a.mul(a);
        let h = t / steps as f64;
        let f = |u: &[f64], v: &[f64]| -> (Vec<f64>, Vec<f64>) { (v.to_vec(), a2.mul_vec(u).iter().map(|x| -x).collect()) };
        let axpy = |x: &[f64], k: &[f64], c: f64| -> Vec<f64> { x.iter().zip(k).map(|(a, b)| a + c * b).collect() };
        let (mut u, mut v) = (u0.to_vec(), v0.to_vec());
        for _ in 0..steps {
            let (k1u, k1v) = f(&u, &v);
            let (k2u, k2v) = f(&axpy(&u, &k1u, h / 2.0), &axpy(&v, &k1v, h / 2.0));
            let (k3u, k3v) = f(&axpy(&u, &k2u, h / 2.0), &axpy(&v, &k2v, h / 2.0));
            let (k4u, k4v) = f(&axpy(&u, &k3u, h), &axpy(&v, &k3v, h));
            for i in 0..u.len() {
                u[i] += h / 6.0 * (k1u[i] + 2.0 * k2u[i] + 2.0 * k3u[i] + k4u[i]);
                v[i] += h / 6.0 * (k1v[i] + 2.0 * k2v[i] + 2.0 * k3v[i] + k4v[i]);
            }
        }
        u
    }

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn initial_conditions_and_free_motion() {
        let a = dirac(&edge()).to_real();
        let (u0, v0) = ([0.3, -0.2, 1.0], [0.5, 0.1, -0.4]);
        let s = wave_solve(&a, &u0, &v0, 0.0).unwrap();
        assert!(close(&s.u, &u0, 1e-12) && close(&s.v, &v0, 1e-12));
        let free = wave_solve(&RealMatrix::zeros(3, 3), &u0, &v0, 2.0).unwrap();
        let expected: Vec<f64> = u0.iter().zip(&v0).map(|(u, v)| u + 2.0 * v).collect();
        assert!(close(&free.u, &expected, 1e-14));
    }

    #[test]
    fn dirac_edge_against_rk4() {
        let a = dirac(&edge()).to_real();
        let (u0, v0) = ([0.0, 0.0, 1.0], [0.0; 3]);
        let t = std::f64::consts::PI / SQRT_2;
        let s = wave_solve(&a, &u0, &v0, t).unwrap();
        assert!(close(&s.u, &rk4(&a, &u0, &v0, t, 2000), 1e-6));
        // cos(sqrt 2 t) = -1 on the +-sqrt 2 modes, which carry the whole edge amplitude
        assert!((s.u[2] + 1.0).abs() < 1e-12);
        let v = wave_solve(&a, &u0, &[0.2, 0.0, -0.1], 0.7).unwrap();
        assert!(close(&v.u, &rk4(&a, &u0, &[0.2, 0.0, -0.1], 0.7, 2000), 1e-6));
    }

    #[test]
    fn dalembert_residual_is_small() {
        let g = whitney(&Graph::cycle(5)).unwrap();
        for kind in [OperatorKind::Dirac, OperatorKind::Connection, OperatorKind::Green] {
            let a = kind.build(&g).to_real();
            let n = g.len();
            let u0: Vec<f64> = (0..n).map(|i| (i as f64 * 0.37).sin()).collect();
            let v0: Vec<f64> = (0..n).map(|i| (i as f64 * 0.11).cos()).collect();
            let r = dalembert_residual(&a, &u0, &v0, &[0.3, 1.1], 1e-4).unwrap();
            assert!(r < 1e-6, "{kind:?}: {r}");
        }
    }

    #[test]
    fn boundary_round_trip() {
        let g = whitney(&Graph::cycle(4)).unwrap();
        let a = connection_matrix(&g).to_real();
        let n = g.len();
        let u0: Vec<f64> = (0..n).map(|i| (i as f64).cos()).collect();
        let u1: Vec<f64> = (0..n).map(|i| (2.0 * i as f64).sin()).collect();
        let v0 = boundary_solve(&a, 0.1, &u0, &u1).unwrap();
        let end = wave_solve(&a.scale(0.1), &u0, &v0, 1.0).unwrap();
        assert!(close(&end.u, &u1, 1e-8));
        assert!(close(&boundary_solve(&RealMatrix::zeros(n, n), 1.0, &u0, &u0).unwrap(), &vec![0.0; n], 1e-15));
        assert!(matches!(boundary_solve(&a, 10.0, &u0, &u1), Err(Error::NormViolation { .. })));
    }

    #[test]
    fn boundary_across_components() {
        let g = closure(&[[1, 2], [3, 4]]).unwrap();
        let a = dirac(&g).to_real();
        let mut u0 = vec![0.0; g.len()];
        let mut u1 = vec![0.0; g.len()];
        u0[g.position(&crate::complex::Simplex::new([1, 2]).unwrap()).unwrap()] = 1.0;
        u1[g.position(&crate::complex::Simplex::new([3, 4]).unwrap()).unwrap()] = 1.0;
        let v0 = boundary_solve(&a, 1.0, &u0, &u1).unwrap();
        assert!(close(&wave_solve(&a, &u0, &v0, 1.0).unwrap().u, &u1, 1e-8));
    }

    #[test]
    fn symplectic_basics() {
        let zero = SymplecticMap::new(&RealMatrix::zeros(2, 2)).unwrap();
        let s = WaveState::new(vec![1.0, 2.0], vec![3.0, 4.0]).unwrap();
        let r = zero.step(&s);
        assert_eq!((r.u.clone(), r.v.clone()), (vec![-3.0, -4.0], vec![1.0, 2.0]));
        assert_eq!(zero.evolve(&s, 4)[4], s);

        let a = connection_matrix(&edge()).to_real().scale(0.25);
        let m = SymplecticMap::new(&a).unwrap();
        let back = m.inverse_step(&m.step(&s_of(3)));
        assert!(close(&back.u, &s_of(3).u, 1e-15) && close(&back.v, &s_of(3).v, 1e-15));
        assert!(SymplecticMap::new(&connection_matrix(&edge()).to_real()).is_err());
    }

    fn s_of(n: usize) -> WaveState {
        WaveState::new((0..n).map(|i| i as f64 + 0.5).collect(), (0..n).map(|i| 1.0 - i as f64).collect()).unwrap()
    }

    #[test]
    fn iterates_match_closed_form() {
        let g = whitney(&Graph::cycle(5)).unwrap();
        let l = connection_matrix(&g).to_real();
        let rho = crate::spectra::eigvalsh(&l).unwrap().spectral_radius();
        let a = l.scale(0.5 / rho);
        let m = SymplecticMap::new(&a).unwrap();
        let start = s_of(g.len());
        let states = m.evolve(&start, 100);
        for (k, s) in states.iter().enumerate() {
            assert!(close(&s.u, &m.closed_form(&start, k), 1e-8), "step {k}");
        }
        assert!(block_map_eigenvalue_check(&a, 1e-10).unwrap().pass);
    }

    #[test]
    fn block_eigenvalues_of_zero_are_plus_minus_i() {
        let m = SymplecticMap::new(&RealMatrix::zeros(1, 1)).unwrap();
        let mut e = m.block_eigenvalues();
        e.sort_by(|a, b| a.im.total_cmp(&b.im));
        assert!((e[0] - Complex64::new(0.0, -1.0)).norm() < 1e-15);
        assert!((e[1] - Complex64::new(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn conjugation() {
        assert!(unitary_conjugation_check(&RealMatrix::zeros(2, 2), 1e-8).unwrap().pass);
        let a = connection_matrix(&edge()).to_real().scale(0.25);
        let v = unitary_conjugation_check(&a, 1e-8).unwrap();
        assert!(v.pass, "{v:?}");
        assert!(unitary_conjugation_check(&a.scale(8.0), 1e-8).is_err());
    }

    #[test]
    fn causality_and_its_continuous_contrast() {
        let g = whitney(&Graph::cycle(8)).unwrap();
        let l = connection_matrix(&g).to_real();
        let rho = crate::spectra::eigvalsh(&l).unwrap().spectral_radius();
        let a = l.scale(0.5 / rho);
        for steps in [0, 1, 3, 6] {
            assert!(causality_check(&a, 0, steps).unwrap().pass);
        }
        let one = SymplecticMap::new(&a).unwrap().evolve(&WaveState::impulse(g.len(), 0), 1);
        let dist = interaction_distances(&a, 0);
        let support: Vec<usize> = (0..g.len()).filter(|&i| one[1].u[i] != 0.0).collect();
        assert!(support.iter().all(|&i| dist[i] <= Some(1)));
        assert_eq!(continuous_support(&a, 0, 0.1).unwrap(), g.len());
    }

    #[test]
    fn chebyshev() {
        let a = connection_matrix(&edge()).to_real().scale(0.25);
        let v = chebyshev_series_check(&a, 5, 1e-9).unwrap();
        assert!(v.pass, "{v:?}");
        let [arcsin, plain, cayley] = scalar_discretizations(0.01, 0.3);
        assert!((arcsin - plain).norm() < 1e-7 && (plain - cayley).norm() < 1e-7);
        assert!(chebyshev_series_check(&RealMatrix::zeros(2, 2), 0, 1e-12).unwrap().pass);
    }

    #[test]
    fn trajectory_format() {
        let csv = trajectory_csv(&[WaveState::impulse(2, 1)]);
        assert_eq!(csv, "step,simplex_index,u,v\n0,0,0,0\n0,1,1,0\n");
    }
}
