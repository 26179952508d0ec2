use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use simplex_spectra::complex::{random_complex, whitney, Complex, Graph, Simplex};
use simplex_spectra::dynamics::{attractor, find_automorphisms, verify_lefschetz, MapFile, SimplicialMap};
use simplex_spectra::harness::{check_complex, emit_figures, figure_csv_check, run_scan, ScanConfig, ScanReport};
use simplex_spectra::operators::{MatrixDump, OperatorKind};
use simplex_spectra::spectra::{betti, signature, spectrum_of, ZERO_TOL};
use simplex_spectra::waves::{causality_check, trajectory_csv, OperatorChoice, SymplecticMap, WaveState, SYMPLECTIC_RADIUS};

/// Operators, spectra, dynamics and waves on finite abstract simplicial complexes.
#[derive(Parser, Debug)]
#[command(name = "sspec", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Seed for random complexes and sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Numerical tolerance for spectral checks.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,
    /// Output file (directory for `figures`); stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Complex file: one JSON array of vertex arrays.
    #[arg(long, global = true)]
    complex: Option<PathBuf>,
    /// Close the complex file under subsets instead of rejecting it.
    #[arg(long, global = true)]
    auto_close: bool,
    /// Built-in complex when no file is given: random:N:M, cycle:N,
    /// complete:N, path:N, octahedron or multipartite:A,B,...
    #[arg(long, global = true)]
    graph: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the complex.
    Gen,
    /// Dump an operator matrix.
    Matrix {
        #[arg(value_parser = parse_operator)]
        operator: OperatorKind,
    },
    /// Eigenvalues and cumulative sums of an operator.
    Spectra {
        #[arg(value_parser = parse_operator, default_value = "L")]
        operator: OperatorKind,
    },
    /// Check every identity, on the given complex or on a seeded sweep.
    Verify {
        #[command(flatten)]
        sweep: Sweep,
        /// Where to write the witness of a failed check.
        #[arg(long, default_value = "witness.json")]
        witness: PathBuf,
    },
    /// Search seeded random complexes for counterexamples.
    Scan {
        #[arg(value_enum)]
        question: Question,
        #[command(flatten)]
        sweep: Sweep,
    },
    /// Fixed points and Lefschetz numbers of a map or of all automorphisms.
    Lefschetz {
        /// Map file {vertices, image}; all automorphisms when absent.
        #[arg(long)]
        map: Option<PathBuf>,
        #[arg(long, default_value_t = 1000)]
        limit: usize,
    },
    /// Discrete wave evolution (u, v) -> (2Au - v, u) from an impulse.
    Wave {
        #[arg(long, value_parser = parse_operator, default_value = "D")]
        operator: OperatorKind,
        /// Factor c in cA; by default rho(cA) = 0.45.
        #[arg(long)]
        scale: Option<f64>,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        /// Source simplex as a basis index or a vertex list such as 1,2.
        #[arg(long, default_value = "0")]
        source: String,
    },
    /// Spectra and degree plots with their CSV table.
    Figures,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Question {
    Loewner,
    GreenTop,
    Radius,
}

impl Question {
    fn scan(self) -> &'static str {
        match self {
            Question::Loewner => "loewner",
            Question::GreenTop => "green-top",
            Question::Radius => "radius",
        }
    }
}

#[derive(Args, Debug)]
struct Sweep {
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Vertex range as MIN..MAX.
    #[arg(long, default_value = "3..15", value_parser = parse_vertex_range)]
    vertices: (u32, u32),
    /// Edge density range as MIN..MAX.
    #[arg(long, default_value = "0.2..0.8", value_parser = parse_density_range)]
    density: (f64, f64),
    /// Restrict to these checks (repeatable).
    #[arg(long = "check")]
    checks: Vec<String>,
    /// Include disconnected complexes in the Green-gap scan.
    #[arg(long)]
    all_components: bool,
}

impl Sweep {
    fn config(&self, g: &Global) -> ScanConfig {
        ScanConfig {
            trials: self.trials,
            vertex_range: self.vertices,
            edge_density_range: self.density,
            seed: g.seed,
            tolerance: g.tol,
            checks: self.checks.clone(),
            connected_only: !self.all_components,
        }
    }
}

fn parse_operator(s: &str) -> Result<OperatorKind, String> {
    s.parse().map_err(|e: simplex_spectra::Error| e.to_string())
}

fn parse_range<T: std::str::FromStr>(s: &str) -> Result<(T, T), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected MIN..MAX, got {s:?}"))?;
    let parse = |x: &str| x.trim().parse::<T>().map_err(|_| format!("bad bound {x:?}"));
    Ok((parse(a)?, parse(b)?))
}

fn parse_vertex_range(s: &str) -> Result<(u32, u32), String> {
    parse_range(s)
}

fn parse_density_range(s: &str) -> Result<(f64, f64), String> {
    parse_range(s)
}

fn numbers(s: &str) -> Result<Vec<u32>> {
    s.split(',').map(|x| x.trim().parse::<u32>().with_context(|| format!("bad number {x:?}"))).collect()
}

fn builtin(spec: &str, seed: u64) -> Result<Complex> {
    let (kind, args) = spec.split_once(':').unwrap_or((spec, ""));
    let one = || -> Result<u32> { args.parse().with_context(|| format!("{kind} needs a vertex count")) };
    let graph = match kind {
        "random" => {
            let (n, m) = args.split_once(':').context("random:N:M expected")?;
            return Ok(random_complex(n.parse()?, m.parse()?, seed)?);
        }
        "cycle" => Graph::cycle(one()?),
        "complete" => Graph::complete(one()?),
        "path" => Graph::path(one()?),
        "octahedron" => Graph::octahedron(),
        "multipartite" => Graph::complete_multipartite(&numbers(args)?),
        other => bail!("unknown graph {other:?}"),
    };
    Ok(whitney(&graph)?)
}

impl Global {
    fn explicit_complex(&self) -> bool {
        self.complex.is_some() || self.graph.is_some()
    }

    fn load(&self) -> Result<Complex> {
        match (&self.complex, &self.graph) {
            (Some(_), Some(_)) => bail!("give either --complex or --graph"),
            (Some(path), None) => {
                let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                Ok(Complex::from_json(&text, self.auto_close)?)
            }
            (None, spec) => builtin(spec.as_deref().unwrap_or("random:8:14"), self.seed),
        }
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
            None => {
                print!("{text}");
                if !text.ends_with('\n') {
                    println!();
                }
                Ok(())
            }
        }
    }

    fn only(&self, allowed: &[Format]) -> Result<()> {
        if !allowed.contains(&self.format) {
            bail!("format {:?} is not available for this command", self.format);
        }
        Ok(())
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn source_index(g: &Complex, s: &str) -> Result<usize> {
    if !s.contains(',') {
        if let Ok(i) = s.parse::<usize>() {
            if i >= g.len() {
                bail!("source index {i} out of range for {} simplices", g.len());
            }
            return Ok(i);
        }
    }
    let x = Simplex::new(numbers(s)?)?;
    g.position(&x).with_context(|| format!("{s:?} is not a simplex of the complex"))
}

fn report_exit(report: &ScanReport) -> u8 {
    report.exit_code() as u8
}

fn run(cli: Cli) -> Result<u8> {
    let g = &cli.global;
    match cli.command {
        Command::Gen => {
            g.only(&[Format::Json])?;
            g.emit(&g.load()?.to_json())?;
        }
        Command::Matrix { operator } => {
            g.only(&[Format::Json, Format::Csv])?;
            let c = g.load()?;
            let dump = MatrixDump::new(&c, operator, &operator.build(&c));
            g.emit(&if g.format == Format::Csv { dump.to_csv() } else { pretty(&dump) })?;
        }
        Command::Spectra { operator } => {
            g.only(&[Format::Json, Format::Csv])?;
            let c = g.load()?;
            let spec = spectrum_of(&operator.build(&c));
            if g.format == Format::Csv {
                g.emit(&spec.to_csv())?;
            } else {
                let s = signature(&spec, ZERO_TOL);
                g.emit(&pretty(&json!({
                    "operator": operator.name(),
                    "values": spec.values(),
                    "cumulative": spec.cumulative(),
                    "signature": { "positives": s.positives, "negatives": s.negatives, "zeros": s.zeros },
                    "euler_characteristic": c.euler_characteristic(),
                    "betti": betti(&c).0,
                })))?;
            }
        }
        Command::Verify { sweep, witness } => {
            g.only(&[Format::Json])?;
            let cfg = sweep.config(g);
            let report = if g.explicit_complex() { check_complex("verify", &g.load()?, &cfg)? } else { run_scan("verify", &cfg)? };
            g.emit(&pretty(&report))?;
            if let Some(w) = report.checks.iter().filter(|c| c.failures() > 0).find_map(|c| c.witness.as_ref()) {
                fs::write(&witness, w.to_json()).with_context(|| format!("writing {}", witness.display()))?;
                eprintln!("check {} failed; witness written to {}", w.check, witness.display());
            }
            return Ok(report_exit(&report));
        }
        Command::Scan { question, sweep } => {
            g.only(&[Format::Json])?;
            let cfg = sweep.config(g);
            let report = if g.explicit_complex() {
                check_complex(question.scan(), &g.load()?, &cfg)?
            } else {
                run_scan(question.scan(), &cfg)?
            };
            g.emit(&pretty(&report))?;
            return Ok(if report.candidates.is_empty() { 0 } else { 2 });
        }
        Command::Lefschetz { map, limit } => {
            g.only(&[Format::Json])?;
            let c = g.load()?;
            let maps = match map {
                Some(path) => {
                    let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
                    let file: MapFile = serde_json::from_str(&text)?;
                    vec![SimplicialMap::from_file(&c, &file)?]
                }
                None => find_automorphisms(&c, Some(limit))?,
            };
            let mut all_pass = true;
            let mut entries = Vec::new();
            for t in &maps {
                let report = verify_lefschetz(t);
                all_pass &= report.pass;
                let mut entry = json!({ "map": t.to_file(), "report": report });
                if !t.is_automorphism() {
                    let a = attractor(t)?;
                    all_pass &= a.verdict().pass;
                    entry["attractor"] = serde_json::to_value(&a)?;
                }
                entries.push(entry);
            }
            g.emit(&pretty(&entries))?;
            return Ok(if all_pass { 0 } else { 2 });
        }
        Command::Wave { operator, scale, steps, source } => {
            g.only(&[Format::Json, Format::Csv])?;
            let c = g.load()?;
            let choice = match scale {
                Some(s) => OperatorChoice::new(operator, s)?,
                None => OperatorChoice::normalized(operator, &c, SYMPLECTIC_RADIUS)?,
            };
            let a = choice.matrix(&c);
            let i = source_index(&c, &source)?;
            let states = SymplecticMap::new(&a)?.evolve(&WaveState::impulse(c.len(), i), steps);
            let verdict = causality_check(&a, i, steps)?;
            if g.format == Format::Csv {
                g.emit(&trajectory_csv(&states))?;
            } else {
                g.emit(&pretty(&json!({
                    "operator": operator.name(),
                    "scale": choice.scale,
                    "source": c.get(i),
                    "causality": verdict,
                    "states": states,
                })))?;
            }
            return Ok(if verdict.pass { 0 } else { 2 });
        }
        Command::Figures => {
            let c = g.load()?;
            let f = emit_figures(&c)?;
            let dir = g.out.clone().unwrap_or_else(|| PathBuf::from("."));
            fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
            let write = |name: &str, text: &str| -> Result<PathBuf> {
                let p = Path::new(&dir).join(name);
                fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?;
                Ok(p)
            };
            let mut written = Vec::new();
            if g.format != Format::Svg {
                written.push(write("figures.csv", &f.csv)?);
            }
            if g.format != Format::Csv {
                written.push(write("spectra.svg", &f.spectra_svg)?);
                written.push(write("degrees.svg", &f.degrees_svg)?);
            }
            let verdict = figure_csv_check(&f.csv)?;
            println!("{}", pretty(&json!({ "files": written, "csv_check": verdict })).trim_end());
            return Ok(if verdict.pass { 0 } else { 2 });
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_and_graphs() {
        assert_eq!(parse_vertex_range("3..9").unwrap(), (3, 9));
        assert!(parse_vertex_range("3-9").is_err());
        assert_eq!(parse_density_range("0.1..0.5").unwrap(), (0.1, 0.5));
        assert_eq!(builtin("cycle:4", 0).unwrap().len(), 8);
        assert_eq!(builtin("multipartite:1,1,1", 0).unwrap().len(), 7);
        assert_eq!(builtin("random:4:6", 3).unwrap().len(), 15);
        assert!(builtin("torus", 0).is_err());
    }

    #[test]
    fn sources() {
        let c = builtin("complete:3", 0).unwrap();
        assert_eq!(source_index(&c, "0").unwrap(), 0);
        assert_eq!(source_index(&c, "1,2").unwrap(), 3);
        assert_eq!(source_index(&c, "3").unwrap(), 3);
        assert!(source_index(&c, "7").is_err());
        assert!(source_index(&c, "1,5").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
