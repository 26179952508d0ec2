use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::complex::Complex;
use crate::error::{invalid, Result};
use crate::operators::{connection_degrees, connection_matrix, dirac, dirac_degrees, green_matrix};
use crate::report::Verdict;
use crate::spectra::{spectrum_of, Spectrum};

const HEADER: &str = "j,lambda_L,lambda_g,lambda_D,S_L,S_g,S_D,d_L,d_D";

/// Figure data for one complex: the CSV table and two SVG documents.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Figures {
    pub csv: String,
    /// Spectra and cumulative spectra of `L`, `g` and `D`.
    pub spectra_svg: String,
    /// Spectra of `L` and `D` under their degree sequences.
    pub degrees_svg: String,
}

pub fn emit_figures(g: &Complex) -> Result<Figures> {
    if g.is_empty() {
        return invalid("figures need a nonempty complex");
    }
    let l = spectrum_of(&connection_matrix(g));
    let green = spectrum_of(&green_matrix(g));
    let d = spectrum_of(&dirac(g));
    let dl = connection_degrees(g);
    let dd = dirac_degrees(g);

    let mut csv = format!("{HEADER}\n");
    for j in 0..g.len() {
        writeln!(
            csv,
            "{},{},{},{},{},{},{},{},{}",
            j + 1,
            l.values()[j],
            green.values()[j],
            d.values()[j],
            l.cumulative()[j],
            green.cumulative()[j],
            d.cumulative()[j],
            dl.values()[j],
            dd.values()[j]
        )
        .expect("writing to a String");
    }

    let series = |s: &Spectrum, cumulative: bool| -> Vec<f64> {
        if cumulative { s.cumulative().to_vec() } else { s.values().to_vec() }
    };
    let spectra_svg = svg(
        "Spectra and cumulative spectra",
        &[
            Panel {
                title: "eigenvalues",
                series: vec![
                    Series::dots("L", RED, series(&l, false)),
                    Series::dots("g", BLUE, series(&green, false)),
                    Series::dots("D", GREEN, series(&d, false)),
                ],
            },
            Panel {
                title: "cumulative sums",
                series: vec![
                    Series::dots("L", RED, series(&l, true)),
                    Series::dots("g", BLUE, series(&green, true)),
                    Series::dots("D", GREEN, series(&d, true)),
                ],
            },
        ],
    );
    let as_f64 = |v: &[i64]| v.iter().map(|&x| x as f64).collect::<Vec<_>>();
    let degrees_svg = svg(
        "Eigenvalues under the degree sequence",
        &[
            Panel {
                title: "L",
                series: vec![Series::steps("d(L)", GRAY, as_f64(dl.values())), Series::dots("L", RED, series(&l, false))],
            },
            Panel {
                title: "D",
                series: vec![
                    Series::steps("d(D)", GRAY, as_f64(dd.values())),
                    Series::dots("D", GREEN, series(&d, false)),
                ],
            },
        ],
    );
    Ok(Figures { csv, spectra_svg, degrees_svg })
}

/// Exact consistency of a figure table: `j` counts from 1, each spectrum
/// is descending, `S_j` is the floating-point sum `S_{j-1} + lambda_j`
/// bit for bit, and degrees are descending integers.
pub fn figure_csv_check(csv: &str) -> Result<Verdict> {
    let mut lines = csv.lines();
    if lines.next() != Some(HEADER) {
        return invalid(format!("figure CSV must start with {HEADER:?}"));
    }
    let mut prev: Option<Vec<f64>> = None;
    let mut failures = Vec::new();
    for (row, line) in lines.enumerate() {
        let cols: Vec<f64> = line
            .split(',')
            .map(|c| c.parse::<f64>().map_err(|e| crate::Error::InvalidInput(format!("row {}: {e}", row + 1))))
            .collect::<Result<_>>()?;
        if cols.len() != 9 {
            return invalid(format!("row {} has {} columns", row + 1, cols.len()));
        }
        let mut ok = cols[0] == (row + 1) as f64 && cols[7].fract() == 0.0 && cols[8].fract() == 0.0;
        for c in 0..3 {
            let before = prev.as_ref().map_or(0.0, |p| p[4 + c]);
            ok &= before + cols[1 + c] == cols[4 + c];
            ok &= prev.as_ref().is_none_or(|p| p[1 + c] >= cols[1 + c]);
        }
        ok &= prev.as_ref().is_none_or(|p| p[7] >= cols[7] && p[8] >= cols[8]);
        if !ok {
            failures.push(row + 1);
        }
        prev = Some(cols);
    }
    if prev.is_none() {
        return invalid("figure CSV has no rows");
    }
    Ok(Verdict::exact("figure-csv", failures.is_empty()).with_witness(serde_json::json!({ "bad_rows": failures })))
}

const RED: &str = "#c0392b";
const BLUE: &str = "#2471a3";
const GREEN: &str = "#1e8449";
const GRAY: &str = "#7f8c8d";

struct Series {
    label: &'static str,
    color: &'static str,
    values: Vec<f64>,
    steps: bool,
}

impl Series {
    fn dots(label: &'static str, color: &'static str, values: Vec<f64>) -> Self {
        Series { label, color, values, steps: false }
    }

    fn steps(label: &'static str, color: &'static str, values: Vec<f64>) -> Self {
        Series { label, color, values, steps: true }
    }
}

struct Panel {
    title: &'static str,
    series: Vec<Series>,
}

const PANEL_W: f64 = 420.0;
const PANEL_H: f64 = 320.0;
const MARGIN: f64 = 48.0;

fn svg(title: &str, panels: &[Panel]) -> String {
    let width = PANEL_W * panels.len() as f64;
    let height = PANEL_H + 40.0;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(out, r#"<text x="{}" y="20" text-anchor="middle" font-size="15">{title}</text>"#, width / 2.0);
    for (i, p) in panels.iter().enumerate() {
        let _ = writeln!(out, r#"<g transform="translate({},30)">"#, PANEL_W * i as f64);
        panel(&mut out, p);
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}

fn panel(out: &mut String, p: &Panel) {
    let n = p.series.iter().map(|s| s.values.len()).max().unwrap_or(0).max(1);
    let all = p.series.iter().flat_map(|s| s.values.iter().copied());
    let (mut lo, mut hi) = all.fold((0.0f64, 0.0f64), |(a, b), v| (a.min(v), b.max(v)));
    if hi - lo < 1e-12 {
        lo -= 1.0;
        hi += 1.0;
    }
    let (x0, x1, y0, y1) = (MARGIN, PANEL_W - 16.0, PANEL_H - MARGIN + 16.0, 24.0);
    let px = |j: f64| x0 + (j - 1.0) / (n.max(2) - 1) as f64 * (x1 - x0);
    let py = |v: f64| y0 - (v - lo) / (hi - lo) * (y0 - y1);

    let _ = writeln!(out, r#"<text x="{}" y="14" text-anchor="middle">{}</text>"#, (x0 + x1) / 2.0, p.title);
    let _ = writeln!(
        out,
        r#"<rect x="{x0}" y="{y1}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        x1 - x0,
        y0 - y1
    );
    if lo < 0.0 && hi > 0.0 {
        let _ = writeln!(out, r##"<line x1="{x0}" y1="{0}" x2="{x1}" y2="{0}" stroke="#bbb"/>"##, py(0.0));
    }
    for (v, anchor) in [(lo, y0), (hi, y1)] {
        let _ = writeln!(out, r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#, x0 - 4.0, anchor + 4.0, tick(v));
    }
    let _ = writeln!(out, r#"<text x="{x0}" y="{}" text-anchor="middle">1</text>"#, y0 + 16.0);
    let _ = writeln!(out, r#"<text x="{x1}" y="{}" text-anchor="middle">{n}</text>"#, y0 + 16.0);
    let _ = writeln!(out, r#"<text x="{}" y="{}" text-anchor="middle">j</text>"#, (x0 + x1) / 2.0, y0 + 16.0);

    for (k, s) in p.series.iter().enumerate() {
        let mut path = String::new();
        for (j, &v) in s.values.iter().enumerate() {
            let (x, y) = (px(j as f64 + 1.0), py(v));
            if s.steps {
                let half = 0.5 * (x1 - x0) / (n.max(2) - 1) as f64;
                let _ = write!(path, "{}{:.2},{:.2} L{:.2},{:.2} ", if j == 0 { "M" } else { "L" }, x - half, y, x + half, y);
            } else {
                let _ = write!(path, "{}{:.2},{:.2} ", if j == 0 { "M" } else { "L" }, x, y);
            }
        }
        let dash = if s.steps { "" } else { r#" stroke-opacity="0.4""# };
        let _ = writeln!(out, r#"<path d="{}" fill="none" stroke="{}"{dash}/>"#, path.trim_end(), s.color);
        if !s.steps {
            for (j, &v) in s.values.iter().enumerate() {
                let _ = writeln!(
                    out,
                    r#"<circle cx="{:.2}" cy="{:.2}" r="2.2" fill="{}"/>"#,
                    px(j as f64 + 1.0),
                    py(v),
                    s.color
                );
            }
        }
        let ly = y1 + 14.0 + 14.0 * k as f64;
        let _ = writeln!(
            out,
            r#"<rect x="{}" y="{}" width="10" height="10" fill="{}"/><text x="{}" y="{}">{}</text>"#,
            x1 - 60.0,
            ly - 9.0,
            s.color,
            x1 - 46.0,
            ly,
            s.label
        );
    }
}

fn tick(v: f64) -> String {
    if v.fract() == 0.0 { format!("{v}") } else { format!("{v:.2}") }
}
