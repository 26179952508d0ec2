//! Seeded sweeps over random Whitney complexes: conjecture scans, the
//! theorem regression gate and figure output.

mod checks;
mod figures;

pub use checks::{check_names, Outcome, TrialData, SCANS};
pub use figures::{emit_figures, figure_csv_check, Figures};

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complex::{random_graph_with, whitney, Complex};
use crate::error::{invalid, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ScanConfig {
    pub trials: usize,
    /// Inclusive range for the number of vertices.
    pub vertex_range: (u32, u32),
    /// Inclusive range for the edge density `p`; a trial draws
    /// `floor(p n (n-1) / 2)` edges.
    pub edge_density_range: (f64, f64),
    pub seed: u64,
    pub tolerance: f64,
    /// Check names to run; empty runs every check of the scan.
    pub checks: Vec<String>,
    /// Skip disconnected complexes in the Green-gap scan.
    pub connected_only: bool,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            trials: 100,
            vertex_range: (3, 15),
            edge_density_range: (0.2, 0.8),
            seed: 0,
            tolerance: 1e-8,
            checks: Vec::new(),
            connected_only: true,
        }
    }
}

impl ScanConfig {
    pub fn validate(&self) -> Result<()> {
        let (a, b) = self.vertex_range;
        let (p, q) = self.edge_density_range;
        if self.trials == 0 {
            return invalid("trials must be at least 1");
        }
        if a == 0 || a > b {
            return invalid(format!("empty vertex range {a}..={b}"));
        }
        if !(0.0..=1.0).contains(&p) || !(0.0..=1.0).contains(&q) || p > q {
            return invalid(format!("bad edge density range {p}..={q}"));
        }
        if !(self.tolerance >= 0.0 && self.tolerance.is_finite()) {
            return invalid("tolerance must be a nonnegative number");
        }
        Ok(())
    }
}

/// Parameters drawn for one trial.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialSpec {
    pub trial: usize,
    pub vertices: u32,
    pub edges: usize,
}

/// The complex of trial `trial`. Each trial owns the ChaCha stream with the
/// trial index as stream id, so trials are independent of evaluation order.
pub fn trial_complex(cfg: &ScanConfig, trial: usize) -> Result<(TrialSpec, Complex)> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(trial as u64);
    let n = rng.gen_range(cfg.vertex_range.0..=cfg.vertex_range.1);
    let p = rng.gen_range(cfg.edge_density_range.0..=cfg.edge_density_range.1);
    let pairs = n as usize * (n as usize - 1) / 2;
    let m = ((p * pairs as f64).floor() as usize).min(pairs);
    let graph = random_graph_with(n, m, &mut rng)?;
    Ok((TrialSpec { trial, vertices: n, edges: m }, whitney(&graph)?))
}

/// A complex together with the check result it produced.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub check: String,
    pub trial: usize,
    pub margin: f64,
    /// Offending index, such as the partial-sum length `k`.
    pub index: Option<usize>,
    /// The failure was confirmed in exact arithmetic.
    #[serde(default)]
    pub exact: bool,
    pub complex: Complex,
}

impl Witness {
    /// Re-runs the check on the stored complex and returns the margin.
    pub fn replay(&self, cfg: &ScanConfig) -> Result<f64> {
        Ok(checks::evaluate(&self.check, &TrialData::new(self.complex.clone()), cfg)?.margin)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("witness serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub check: String,
    pub trials: usize,
    pub passes: usize,
    pub skipped: usize,
    pub min_margin: Option<f64>,
    /// Trial with the smallest margin, earliest on ties.
    pub witness: Option<Witness>,
}

impl CheckSummary {
    pub fn failures(&self) -> usize {
        self.trials - self.passes - self.skipped
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub scan: String,
    pub config: ScanConfig,
    pub checks: Vec<CheckSummary>,
    /// Failures that survived re-verification.
    pub candidates: Vec<Witness>,
    pub wall_time_secs: f64,
}

impl ScanReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.failures() == 0)
    }

    /// 0 when every trial passes, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_pass() && self.candidates.is_empty() {
            0
        } else {
            2
        }
    }

    pub fn summary(&self, name: &str) -> Option<&CheckSummary> {
        self.checks.iter().find(|c| c.check == name)
    }

    /// JSON with the wall time zeroed, identical across reruns.
    pub fn canonical_json(&self) -> String {
        let mut r = self.clone();
        r.wall_time_secs = 0.0;
        serde_json::to_string_pretty(&r).expect("report serializes")
    }
}

struct TrialResult {
    trial: usize,
    complex: Complex,
    outcomes: Vec<Outcome>,
}

fn run_trial(cfg: &ScanConfig, names: &[&'static str], trial: usize) -> Result<TrialResult> {
    let (_, complex) = trial_complex(cfg, trial)?;
    let data = TrialData::new(complex);
    let outcomes = names.iter().map(|n| checks::evaluate(n, &data, cfg)).collect::<Result<_>>()?;
    Ok(TrialResult { trial, complex: data.into_complex(), outcomes })
}

#[cfg(feature = "parallel")]
fn run_trials(cfg: &ScanConfig, names: &[&'static str]) -> Result<Vec<TrialResult>> {
    use rayon::prelude::*;
    (0..cfg.trials).into_par_iter().map(|t| run_trial(cfg, names, t)).collect()
}

#[cfg(not(feature = "parallel"))]
fn run_trials(cfg: &ScanConfig, names: &[&'static str]) -> Result<Vec<TrialResult>> {
    (0..cfg.trials).map(|t| run_trial(cfg, names, t)).collect()
}

/// Runs the named scan (`loewner`, `green-top`, `radius` or `verify`).
pub fn run_scan(scan: &str, cfg: &ScanConfig) -> Result<ScanReport> {
    cfg.validate()?;
    let names = check_names(scan, &cfg.checks)?;
    let start = Instant::now();
    let results = run_trials(cfg, &names)?;
    Ok(merge(scan, cfg, &names, &results, start))
}

/// Runs the checks of `scan` on a single complex, reported as trial 0.
pub fn check_complex(scan: &str, g: &Complex, cfg: &ScanConfig) -> Result<ScanReport> {
    let names = check_names(scan, &cfg.checks)?;
    let start = Instant::now();
    let data = TrialData::new(g.clone());
    let outcomes = names.iter().map(|n| checks::evaluate(n, &data, cfg)).collect::<Result<_>>()?;
    let results = [TrialResult { trial: 0, complex: data.into_complex(), outcomes }];
    Ok(merge(scan, &ScanConfig { trials: 1, ..cfg.clone() }, &names, &results, start))
}

fn merge(scan: &str, cfg: &ScanConfig, names: &[&str], results: &[TrialResult], start: Instant) -> ScanReport {
    let mut checks: Vec<CheckSummary> = names
        .iter()
        .map(|n| CheckSummary {
            check: n.to_string(),
            trials: 0,
            passes: 0,
            skipped: 0,
            min_margin: None,
            witness: None,
        })
        .collect();
    let mut candidates = Vec::new();
    for r in results {
        for (summary, o) in checks.iter_mut().zip(&r.outcomes) {
            summary.trials += 1;
            if o.skipped {
                summary.skipped += 1;
                continue;
            }
            summary.passes += o.pass as usize;
            let witness = || Witness {
                check: summary.check.clone(),
                trial: r.trial,
                margin: o.margin,
                index: o.index,
                exact: o.exact,
                complex: r.complex.clone(),
            };
            if summary.min_margin.is_none_or(|m| o.margin < m) {
                summary.min_margin = Some(o.margin);
                summary.witness = Some(witness());
            }
            if o.candidate {
                candidates.push(witness());
            }
        }
    }
    ScanReport {
        scan: scan.to_string(),
        config: cfg.clone(),
        checks,
        candidates,
        wall_time_secs: start.elapsed().as_secs_f64(),
    }
}

/// Weak Loewner margins `min_k S_k(L) - S_k(D)` and `min_k S_k(L) - S_k(g)`.
pub fn scan_loewner(cfg: &ScanConfig) -> Result<ScanReport> {
    run_scan("loewner", cfg)
}

/// Gap `lambda_1(g) - lambda_2(g)` of the Green matrix.
pub fn scan_green_top(cfg: &ScanConfig) -> Result<ScanReport> {
    run_scan("green-top", cfg)
}

/// `rho(L) - rho(g)`.
pub fn scan_spectral_radius(cfg: &ScanConfig) -> Result<ScanReport> {
    run_scan("radius", cfg)
}

/// Every exact identity and inequality on every trial.
pub fn verify_all(cfg: &ScanConfig) -> Result<ScanReport> {
    run_scan("verify", cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(trials: usize) -> ScanConfig {
        ScanConfig { trials, vertex_range: (3, 8), seed: 5, ..ScanConfig::default() }
    }

    #[test]
    fn config_validation() {
        assert!(ScanConfig::default().validate().is_ok());
        assert!(ScanConfig { trials: 0, ..ScanConfig::default() }.validate().is_err());
        assert!(ScanConfig { vertex_range: (5, 4), ..ScanConfig::default() }.validate().is_err());
        assert!(ScanConfig { edge_density_range: (0.5, 1.5), ..ScanConfig::default() }.validate().is_err());
        let parsed: ScanConfig = serde_json::from_str(r#"{"trials": 3}"#).unwrap();
        assert_eq!(parsed.vertex_range, (3, 15));
    }

    #[test]
    fn trials_are_reproducible_and_independent() {
        let cfg = small(4);
        let (a, ga) = trial_complex(&cfg, 2).unwrap();
        let (b, gb) = trial_complex(&cfg, 2).unwrap();
        assert_eq!((a, ga.to_json()), (b, gb.to_json()));
        let (c, _) = trial_complex(&cfg, 3).unwrap();
        assert!((3..=8).contains(&c.vertices));
        let dense = ScanConfig { vertex_range: (6, 6), edge_density_range: (1.0, 1.0), ..cfg };
        assert_eq!(trial_complex(&dense, 0).unwrap().1.len(), 63);
    }

    #[test]
    fn scans_are_deterministic() {
        let cfg = small(6);
        let a = scan_loewner(&cfg).unwrap();
        let b = scan_loewner(&cfg).unwrap();
        assert_eq!(a.canonical_json(), b.canonical_json());
        assert_eq!(a.checks.len(), 2);
        for s in &a.checks {
            let w = s.witness.as_ref().unwrap();
            let back = Witness::from_json(&w.to_json()).unwrap();
            assert_eq!(back.replay(&cfg).unwrap(), w.margin);
        }
    }

    #[test]
    fn verify_small_sweep() {
        let r = verify_all(&small(8)).unwrap();
        for c in &r.checks {
            assert_eq!(c.failures(), 0, "{}: {:?}", c.check, c.witness.as_ref().map(|w| w.complex.to_json()));
        }
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn single_complex_checks() {
        use crate::complex::{whitney, Graph};
        let g = whitney(&Graph::cycle(5)).unwrap();
        let r = check_complex("verify", &g, &ScanConfig::default()).unwrap();
        assert!(r.all_pass());
        let b = check_complex("green-top", &g, &ScanConfig::default()).unwrap();
        assert_eq!(b.exit_code(), 2);
        assert!(b.candidates[0].exact);
    }

    #[test]
    fn unknown_scan_or_check() {
        assert!(run_scan("nope", &small(1)).is_err());
        let cfg = ScanConfig { checks: vec!["energy".into(), "bogus".into()], ..small(1) };
        assert!(verify_all(&cfg).is_err());
        let cfg = ScanConfig { checks: vec!["energy".into()], ..small(2) };
        assert_eq!(verify_all(&cfg).unwrap().checks.len(), 1);
    }
}
