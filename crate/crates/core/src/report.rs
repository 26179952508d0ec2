use serde::{Deserialize, Serialize};

/// Outcome of a single check, serialized as
/// `{check, pass, margin_min, witness}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub check: String,
    pub pass: bool,
    /// Smallest slack observed; negative values mark a violation. Exact
    /// checks report 0 on success and -1 on failure.
    pub margin_min: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

impl Verdict {
    pub fn margin(check: impl Into<String>, margin_min: f64, tol: f64) -> Self {
        Verdict { check: check.into(), pass: margin_min >= -tol, margin_min, witness: None }
    }

    pub fn exact(check: impl Into<String>, pass: bool) -> Self {
        Verdict { check: check.into(), pass, margin_min: if pass { 0.0 } else { -1.0 }, witness: None }
    }

    pub fn with_witness(mut self, witness: serde_json::Value) -> Self {
        self.witness = Some(witness);
        self
    }
}
