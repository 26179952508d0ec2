use std::cell::OnceCell;

use serde::{Deserialize, Serialize};

use crate::complex::Complex;
use crate::dynamics::{
    dynamical_dirac_check, find_automorphisms, heat_deformation_check_with, koopman_supertrace_check,
    verify_lefschetz_with, Cohomology, DynamicalMatrices, SimplicialMap, AUTOMORPHISM_VERTEX_CAP,
};
use crate::error::{invalid, Result};
use crate::exact::{
    characteristic_polynomial, determinant, eigenvalue_enclosures, rational_to_f64, repeated_root_in,
};
use crate::matrix::{IntegerMatrix, RealMatrix};
use crate::operators::{connection_degrees, connection_matrix, dirac, dirac_degrees, green_matrix, signless};
use crate::spectra::{
    betti, degree_bound_check, eigen, interlace_check, loewner_compare, mckean_singer_check, signature,
    spectrum_of, Spectrum, ZERO_TOL,
};

use super::ScanConfig;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Result of one check on one complex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Outcome {
    pub margin: f64,
    pub index: Option<usize>,
    pub pass: bool,
    /// The check does not apply to this complex.
    pub skipped: bool,
    /// A failure that survived re-verification.
    pub candidate: bool,
    /// The candidate was confirmed in exact arithmetic.
    #[serde(default)]
    pub exact: bool,
}

impl Outcome {
    fn exact(pass: bool) -> Self {
        Outcome { margin: if pass { 0.0 } else { -1.0 }, index: None, pass, skipped: false, candidate: false, exact: false }
    }

    fn margin(margin: f64, index: Option<usize>, tol: f64) -> Self {
        Outcome { margin, index, pass: margin >= -tol, skipped: false, candidate: false, exact: false }
    }

    fn skipped() -> Self {
        Outcome { margin: 0.0, index: None, pass: false, skipped: true, candidate: false, exact: false }
    }
}

/// A complex with its operators and spectra computed on first use.
pub struct TrialData {
    complex: Complex,
    connection: OnceCell<IntegerMatrix>,
    green: OnceCell<IntegerMatrix>,
    dirac: OnceCell<IntegerMatrix>,
    spec_l: OnceCell<Spectrum>,
    spec_g: OnceCell<Spectrum>,
    spec_d: OnceCell<Spectrum>,
}

impl TrialData {
    pub fn new(complex: Complex) -> Self {
        TrialData {
            complex,
            connection: OnceCell::new(),
            green: OnceCell::new(),
            dirac: OnceCell::new(),
            spec_l: OnceCell::new(),
            spec_g: OnceCell::new(),
            spec_d: OnceCell::new(),
        }
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn into_complex(self) -> Complex {
        self.complex
    }

    fn l(&self) -> &IntegerMatrix {
        self.connection.get_or_init(|| connection_matrix(&self.complex))
    }

    fn g(&self) -> &IntegerMatrix {
        self.green.get_or_init(|| green_matrix(&self.complex))
    }

    fn d(&self) -> &IntegerMatrix {
        self.dirac.get_or_init(|| dirac(&self.complex))
    }

    fn spec_l(&self) -> &Spectrum {
        self.spec_l.get_or_init(|| spectrum_of(self.l()))
    }

    fn spec_g(&self) -> &Spectrum {
        self.spec_g.get_or_init(|| spectrum_of(self.g()))
    }

    fn spec_d(&self) -> &Spectrum {
        self.spec_d.get_or_init(|| spectrum_of(self.d()))
    }
}

type Eval = fn(&TrialData, &ScanConfig) -> Result<Outcome>;

const LOEWNER: &[(&str, Eval)] = &[("loewner-D", loewner_d), ("loewner-g", loewner_g)];
const GREEN_TOP: &[(&str, Eval)] = &[("green-gap", green_gap), ("green-radius-gap", green_radius_gap)];
const RADIUS: &[(&str, Eval)] = &[("radius", radius)];
const VERIFY: &[(&str, Eval)] = &[
    ("unimodularity", unimodularity),
    ("green-inverse", green_inverse),
    ("energy", energy),
    ("trace-g", trace_g),
    ("signature", signature_chi),
    ("dirac-symmetry", dirac_symmetry),
    ("interlacing-L", interlacing_l),
    ("interlacing-D", interlacing_d),
    ("interlacing-D-open", interlacing_d_open),
    ("degree-L", degree_l),
    ("degree-D", degree_d),
    ("mckean-singer", mckean_singer),
    ("euler-poincare", euler_poincare),
    ("hydrogen", hydrogen),
    ("lefschetz", lefschetz),
    ("dynamical-matrices", dynamical),
];

/// Scan names with their checks.
pub const SCANS: &[(&str, &[(&str, Eval)])] =
    &[("loewner", LOEWNER), ("green-top", GREEN_TOP), ("radius", RADIUS), ("verify", VERIFY)];

fn registry(scan: &str) -> Result<&'static [(&'static str, Eval)]> {
    match SCANS.iter().find(|(s, _)| *s == scan) {
        Some((_, checks)) => Ok(checks),
        None => invalid(format!("unknown scan {scan:?}")),
    }
}

/// Checks of `scan`, restricted to `selected` unless it is empty.
pub fn check_names(scan: &str, selected: &[String]) -> Result<Vec<&'static str>> {
    let all = registry(scan)?;
    if let Some(bad) = selected.iter().find(|s| !all.iter().any(|(n, _)| n == s)) {
        return invalid(format!("scan {scan:?} has no check {bad:?}"));
    }
    Ok(all.iter().map(|(n, _)| *n).filter(|n| selected.is_empty() || selected.iter().any(|s| s == n)).collect())
}

pub(crate) fn evaluate(name: &str, data: &TrialData, cfg: &ScanConfig) -> Result<Outcome> {
    match SCANS.iter().flat_map(|(_, c)| c.iter()).find(|(n, _)| *n == name) {
        Some((_, eval)) => eval(data, cfg),
        None => invalid(format!("unknown check {name:?}")),
    }
}

/// Eigenvalues with vectors and the residual bound `max ||A v - lambda v||`.
fn tight_spectrum(m: &IntegerMatrix) -> Result<(Spectrum, f64)> {
    let a = m.to_real();
    let e = eigen(&a)?;
    let r = e.residual(&a);
    Ok((Spectrum::from_values(e.values), r))
}

/// Residuals must reach 1e-12 relative to the matrix norm before a
/// failure counts as a candidate.
fn tight(r: f64, a: &RealMatrix) -> bool {
    r <= 1e-12 * (1.0 + a.norm_inf())
}

fn loewner(data: &TrialData, cfg: &ScanConfig, other: &IntegerMatrix, other_spec: &Spectrum) -> Result<Outcome> {
    let margins = loewner_compare(data.spec_l(), other_spec)?;
    let Some((k, m)) = margins.min() else { return Ok(Outcome::skipped()) };
    let mut out = Outcome::margin(m, Some(k), cfg.tolerance);
    if !out.pass {
        let (a, ra) = tight_spectrum(data.l())?;
        let (b, rb) = tight_spectrum(other)?;
        let numeric = loewner_compare(&a, &b)?
            .margins
            .iter()
            .enumerate()
            .any(|(j, m)| m + (j + 1) as f64 * (ra + rb) < -cfg.tolerance);
        let numeric = numeric && tight(ra, &data.l().to_real()) && tight(rb, &other.to_real());
        out.exact = certified_pair(data.l(), &a, other, &b).is_some_and(|(ea, eb)| {
            let (mut sa, mut sb) = (BigRational::zero(), BigRational::zero());
            (0..ea.len()).any(|j| {
                sa += &ea[j].1;
                sb += &eb[j].0;
                rational_to_f64(&(&sa - &sb)) < -cfg.tolerance
            })
        });
        out.candidate = numeric || out.exact;
    }
    Ok(out)
}

type Enclosures = Vec<(BigRational, BigRational)>;

/// Exact eigenvalue enclosures of two matrices up to `EXACT_MAX_ORDER`.
fn certified_pair(a: &IntegerMatrix, sa: &Spectrum, b: &IntegerMatrix, sb: &Spectrum) -> Option<(Enclosures, Enclosures)> {
    if a.rows() > EXACT_MAX_ORDER {
        return None;
    }
    let delta = |s: &Spectrum| 1e-7 * (1.0 + s.spectral_radius());
    Some((
        eigenvalue_enclosures(a, sa.values(), delta(sa))?,
        eigenvalue_enclosures(b, sb.values(), delta(sb))?,
    ))
}

fn loewner_d(data: &TrialData, cfg: &ScanConfig) -> Result<Outcome> {
    loewner(data, cfg, data.d(), data.spec_d())
}

fn loewner_g(data: &TrialData, cfg: &ScanConfig) -> Result<Outcome> {
    loewner(data, cfg, data.g(), data.spec_g())
}

/// Gap `lambda_1(g) - lambda_2(g)` between the two largest eigenvalues. A
/// closing gap is confirmed exactly, for orders up to `EXACT_MAX_ORDER`, as a
/// repeated root of the characteristic polynomial near `lambda_1`.
fn green_gap(data: &TrialData, cfg: &ScanConfig) -> Result<Outcome> {
    let g = data.complex();
    if g.len() < 2 || (cfg.connected_only && !g.is_connected()) {
        return Ok(Outcome::skipped());
    }
    let v = data.spec_g().values();
    let gap = v[0] - v[1];
    let mut out = Outcome { pass: gap > cfg.tolerance, ..Outcome::margin(gap, Some(1), 0.0) };
    if !out.pass {
        let (s, r) = tight_spectrum(data.g())?;
        let numeric = s.values()[0] - s.values()[1] + 2.0 * r <= cfg.tolerance && tight(r, &data.g().to_real());
        out.exact = g.len() <= EXACT_MAX_ORDER && top_root_repeated(data.g(), s.values());
        out.candidate = numeric || out.exact;
    }
    Ok(out)
}

const EXACT_MAX_ORDER: usize = 64;

fn top_root_repeated(m: &IntegerMatrix, values: &[f64]) -> bool {
    let eps = 1e-6f64.max(100.0 * (values[0] - values[1]).abs());
    if values.get(2).is_some_and(|&x| x >= values[0] - eps) {
        return false;
    }
    match (BigRational::from_float(values[0] - eps), BigRational::from_float(values[0] + eps)) {
        (Some(lo), Some(hi)) => repeated_root_in(&characteristic_polynomial(m), &lo, &hi),
        _ => false,
    }
}

/// Gap between the two largest eigenvalues of `g` in absolute value.
fn green_radius_gap(data: &TrialData, cfg: &ScanConfig) -> Result<Outcome> {
    let g = data.complex();
    if g.len() < 2 || (cfg.connected_only && !g.is_connected()) {
        return Ok(Outcome::skipped());
    }
    let mut abs: Vec<f64> = data.spec_g().values().iter().map(|x| x.abs()).collect();
    abs.sort_by(|a, b| b.total_cmp(a));
    let gap = abs[0] - abs[1];
    let mut out = Outcome { pass: gap > cfg.tolerance, ..Outcome::margin(gap, Some(1), 0.0) };
    if !out.pass {
        let (s, r) = tight_spectrum(data.g())?;
        let mut abs: Vec<f64> = s.values().iter().map(|x| x.abs()).collect();
        abs.sort_by(|a, b| b.total_cmp(a));
        out.candidate = abs[0] - abs[1] + 2.0 * r <= cfg.tolerance && tight(r, &data.g().to_real());
    }
    Ok(out)
}

fn radius(data: &TrialData, cfg: &ScanConfig) -> Result<Outcome> {
    if data.complex().is_empty() {
        return Ok(Outcome::skipped());
    }
    let m = data.spec_l().spectral_radius() - data.spec_g().spectral_radius();
    let mut out = Outcome::margin(m, None, cfg.tolerance);
    if !out.pass {
        let (a, ra) = tight_spectrum(data.l())?;
        let (b, rb) = tight_spectrum(data.g())?;
        let numeric = a.spectral_radius() - b.spectral_radius() + ra + rb < -cfg.tolerance
            && tight(ra, &data.l().to_real())
            && tight(rb, &data.g().to_real());
        out.exact = certified_pair(data.l(), &a, data.g(), &b).is_some_and(|(ea, eb)| {
            // rho(L) <= max |endpoint|, rho(g) >= distance of an extreme interval from 0
            let upper = |e: &Enclosures| e.iter().flat_map(|(lo, hi)| [lo.abs(), hi.abs()]).max();
            let lower = |e: &Enclosures| {
                e.iter()
                    .map(|(lo, hi)| if lo.is_positive() { lo.clone() } else if hi.is_negative() { -hi.clone() } else { BigRational::zero() })
                    .max()
            };
            match (upper(&ea), lower(&eb)) {
                (Some(u), Some(l)) => rational_to_f64(&(u - l)) < -cfg.tolerance,
                _ => false,
            }
        });
        out.candidate = numeric || out.exact;
    }
    Ok(out)
}

fn unimodularity(data: &TrialData, _: &ScanConfig) -> Result<Outcome> {
    Ok(Outcome::exact(determinant(data.l()) == BigInt::from(data.complex().fermi_characteristic())))
}

fn green_inverse(data: &TrialData, _: &ScanConfig) -> Result<Outcome> {
    Ok(Outcome::exact(data.l().checked_mul(data.g())? == IntegerMatrix::identity(data.complex().len())))
}

fn energy(data: &TrialData, _: &ScanConfig) -> Result<Outcome> {
    Ok(Outcome::exact(data.g().sum() == data.complex().euler_characteristic()))
}

fn trace_g(data: &TrialData, _: &ScanConfig) -> Result<Outcome> {
    Ok(Outcome::exact(data.g().trace() == data.complex().star_euler_characteristics().iter().sum::<i64>()))
}

/// Margin is the smallest `|lambda|` above the zero tolerance.
fn signature_chi(data: &TrialData, _: &ScanConfig) -> Result<Outcome> {
    let spec = data.spec_l();
    let s = signature(spec, ZERO_TOL);
    if s.zeros > 0 || s.index() != data.complex().euler_characteristic() {
        return Ok(Outcome::exact(false));
    }
    let smallest = spec.values().iter().map(|x| x.abs()).fold(f64::INFINITY, f64::min);
    Ok(Outcome::margin(if spec.is_empty() { 0.0 } else { smallest - ZERO_TOL }, None, 0.0))
}

fn dirac_symmetry(data: &TrialData, cfg: &ScanConfig) -> Result<Outcome> {
    Ok(Outcome::margin(-data.spec_d().pairing_defect(), None, cfg.tolerance))
}

/// Every deletion for small complexes, otherwise the first and last.
fn sample(deletions: Vec<Vec<usize>>, len: usize) -> Vec<Vec<usize>> {
    if len <= 200 || deletions.len() <= 2 {
        deletions
    } else {
        vec![deletions[0].clone(), deletions[deletions.len() - 1].clone()]
    }
}

fn facet_deletions(g: &Complex) -> Vec<Vec<usize>> {
    sample(g.facets().into_iter().map(|p| vec![p]).collect(), g.len())
}

/// The stars `U(v)` of the vertices, which are open sets.
fn star_deletions(g: &Complex) -> Result<Vec<Vec<usize>>> {
    let stars = g
        .block(0)
        .map(|v| Ok(g.star(g.get(v))?.iter().filter_map(|s| g.position(s)).collect()))
        .collect::<Result<Vec<Vec<usize>>>>()?;
    Ok(sample(stars, g.len()))
}

/// Index of the worst deletion goes into `index`.
fn interlacing(m: &IntegerMatrix, outer: &Spectrum, deletions: &[Vec<usize>], tol: f64) -> Result<Outcome> {
    let mut worst = Outcome::skipped();
    for (i, p) in deletions.iter().enumerate() {
        if p.len() >= m.rows() {
            continue;
        }
        let inner = spectrum_of(&m.delete(p)?);
        let v = interlace_check(outer, &inner, tol)?;
        if worst.skipped || v.margin_min < worst.margin {
            worst = Outcome::margin(v.margin_min, Some(i), tol);
        }
    }
    Ok(worst)
}

fn interlacing_l(data: &TrialData, cfg: &ScanConfig) -> Result<Outcome> {
    interlacing(data.l(), data.spec_l(), &facet_deletions(data.complex()), cfg.tolerance)
}

fn interlacing_d(data: &TrialData, cfg: &ScanConfig) -> Result<Outcome> {
    interlacing(data.d(), data.spec_d(), &facet_deletions(data.complex()), cfg.tolerance)
}

fn interlacing_d_open(data: &TrialData, cfg: &ScanConfig) -> Result<Outcome> {
    interlacing(data.d(), data.spec_d(), &star_deletions(data.complex())?, cfg.tolerance)
}

fn degree_l(data: &TrialData, cfg: &ScanConfig) -> Result<Outcome> {
    let v = degree_bound_check(data.spec_l(), &connection_degrees(data.complex()), cfg.tolerance)?;
    Ok(Outcome::margin(v.margin_min, None, cfg.tolerance))
}

fn degree_d(data: &TrialData, cfg: &ScanConfig) -> Result<Outcome> {
    let v = degree_bound_check(data.spec_d(), &dirac_degrees(data.complex()), cfg.tolerance)?;
    Ok(Outcome::margin(v.margin_min, None, cfg.tolerance))
}

fn mckean_singer(data: &TrialData, _: &ScanConfig) -> Result<Outcome> {
    Ok(Outcome::exact(mckean_singer_check(data.complex(), 5)?.pass()))
}

fn euler_poincare(data: &TrialData, _: &ScanConfig) -> Result<Outcome> {
    let g = data.complex();
    Ok(Outcome::exact(betti(g).euler_characteristic() == g.euler_characteristic()))
}

fn hydrogen(data: &TrialData, _: &ScanConfig) -> Result<Outcome> {
    if data.complex().dimension().is_none_or(|q| q > 1) {
        return Ok(Outcome::skipped());
    }
    let abs_d = signless(data.d());
    Ok(Outcome::exact(data.l().sub(data.g()) == abs_d.mul(&abs_d)))
}

const LEFSCHETZ_MAX_SIMPLICES: usize = 300;
const AUTOMORPHISM_SAMPLE: usize = 8;

fn automorphisms(g: &Complex) -> Result<Option<Vec<SimplicialMap<'_>>>> {
    if g.is_empty() || g.vertices().len() > AUTOMORPHISM_VERTEX_CAP || g.len() > LEFSCHETZ_MAX_SIMPLICES {
        return Ok(None);
    }
    Ok(Some(find_automorphisms(g, Some(AUTOMORPHISM_SAMPLE))?))
}

/// Index sum, Koopman supertrace, Lefschetz number and the heat-deformed
/// supertrace over sampled automorphisms.
fn lefschetz(data: &TrialData, cfg: &ScanConfig) -> Result<Outcome> {
    let g = data.complex();
    let Some(maps) = automorphisms(g)? else { return Ok(Outcome::skipped()) };
    let cohomology = Cohomology::new(g);
    let mut worst = Outcome::exact(true);
    for (i, t) in maps.iter().enumerate() {
        let exact = verify_lefschetz_with(t, &cohomology).pass && koopman_supertrace_check(t).pass;
        let heat = heat_deformation_check_with(t, &[0.1, 1.0, 10.0], cfg.tolerance, &cohomology)?;
        let o = if exact { Outcome::margin(heat.margin_min, Some(i), 0.0) } else { Outcome::exact(false) };
        if o.margin < worst.margin || !o.pass {
            worst = Outcome { index: Some(i), ..o };
        }
    }
    Ok(worst)
}

fn dynamical(data: &TrialData, _: &ScanConfig) -> Result<Outcome> {
    let g = data.complex();
    let Some(maps) = automorphisms(g)? else { return Ok(Outcome::skipped()) };
    for (i, t) in maps.iter().enumerate() {
        let m = DynamicalMatrices::for_automorphism(t)?;
        if !(m.inverse_and_energy(g).pass && dynamical_dirac_check(g, &m).pass) {
            return Ok(Outcome { index: Some(i), ..Outcome::exact(false) });
        }
    }
    Ok(Outcome::exact(true))
}
