use thiserror::Error;

/// Errors raised by constructors, checks and file readers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid simplicial map: image of {simplex:?} is {image:?}, which is not a simplex of the complex")]
    InvalidMap { simplex: Vec<u32>, image: Vec<u32> },

    #[error("operator norm {norm} violates the bound {bound}")]
    NormViolation { norm: f64, bound: f64 },

    #[error("size mismatch: expected {expected}, got {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("complex has {size} simplices, above the configured cap of {cap}")]
    TooLarge { size: usize, cap: usize },

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
