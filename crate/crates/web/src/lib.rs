//! WebAssembly bindings behind `www/index.html`.
//!
//! Every entry point takes a random Whitney complex `(n, m, seed)` and
//! returns a string, so the page needs nothing beyond `wasm-bindgen`.

use serde_json::json;
use wasm_bindgen::prelude::*;

use simplex_spectra::complex::{random_complex, Complex};
use simplex_spectra::dynamics::{find_automorphisms, verify_lefschetz};
use simplex_spectra::harness::emit_figures;
use simplex_spectra::operators::OperatorKind;
use simplex_spectra::waves::{causality_check, OperatorChoice, SymplecticMap, WaveState, SYMPLECTIC_RADIUS};

const MAX_VERTICES: u32 = 14;

fn complex(n: u32, m: usize, seed: u64) -> Result<Complex, String> {
    if n == 0 || n > MAX_VERTICES {
        return Err(format!("vertex count must lie in 1..={MAX_VERTICES}"));
    }
    random_complex(n, m, seed).map_err(|e| e.to_string())
}

/// Spectra and cumulative spectra of `L`, `g` and `D` as an SVG document.
pub fn spectra_svg_native(n: u32, m: usize, seed: u64) -> Result<String, String> {
    let g = complex(n, m, seed)?;
    Ok(emit_figures(&g).map_err(|e| e.to_string())?.spectra_svg)
}

/// Wave evolution from the impulse at simplex `source` under the operator
/// scaled to spectral radius 0.45, with its causality verdict.
pub fn wave_json_native(n: u32, m: usize, seed: u64, operator: &str, source: usize, steps: usize) -> Result<String, String> {
    let g = complex(n, m, seed)?;
    let kind: OperatorKind = operator.parse().map_err(|e: simplex_spectra::Error| e.to_string())?;
    if source >= g.len() {
        return Err(format!("source must be below {}", g.len()));
    }
    let a = OperatorChoice::normalized(kind, &g, SYMPLECTIC_RADIUS).map_err(|e| e.to_string())?.matrix(&g);
    let map = SymplecticMap::new(&a).map_err(|e| e.to_string())?;
    let states = map.evolve(&WaveState::impulse(g.len(), source), steps);
    let verdict = causality_check(&a, source, steps).map_err(|e| e.to_string())?;
    let simplices: Vec<_> = g.simplices().iter().map(|s| s.vertices().to_vec()).collect();
    let u: Vec<_> = states.iter().map(|s| s.u.clone()).collect();
    Ok(json!({ "simplices": simplices, "u": u, "causality": verdict }).to_string())
}

/// Fixed points, index sums and Lefschetz numbers of up to `limit` automorphisms.
pub fn lefschetz_json_native(n: u32, m: usize, seed: u64, limit: usize) -> Result<String, String> {
    let g = complex(n, m, seed)?;
    let maps = find_automorphisms(&g, Some(limit)).map_err(|e| e.to_string())?;
    let rows: Vec<_> = maps.iter().map(|t| json!({ "map": t.to_file(), "report": verify_lefschetz(t) })).collect();
    Ok(json!({ "simplices": g.len(), "automorphisms": rows }).to_string())
}

#[wasm_bindgen]
pub fn spectra_svg(n: u32, m: usize, seed: u64) -> Result<String, JsError> {
    spectra_svg_native(n, m, seed).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn wave_json(n: u32, m: usize, seed: u64, operator: &str, source: usize, steps: usize) -> Result<String, JsError> {
    wave_json_native(n, m, seed, operator, source, steps).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn lefschetz_json(n: u32, m: usize, seed: u64, limit: usize) -> Result<String, JsError> {
    lefschetz_json_native(n, m, seed, limit).map_err(|e| JsError::new(&e))
}
