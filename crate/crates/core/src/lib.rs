//! Operators, spectra, dynamics and waves on finite abstract simplicial complexes.

pub mod complex;
pub mod dynamics;
pub mod error;
pub mod exact;
pub mod harness;
pub mod matrix;
pub mod operators;
pub mod report;
pub mod spectra;
pub mod waves;

pub use error::{Error, Result};
