use serde::{Deserialize, Serialize};

use crate::TOL;

/// Outcome of one numerical check. `residual` is the largest max-norm
/// difference seen; `witnesses` name what exceeded the tolerance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub dim: usize,
    pub residual: f64,
    pub pass: bool,
    pub witnesses: Vec<String>,
}

impl Report {
    pub fn new(check: &str, dim: usize, residual: f64, witnesses: Vec<String>) -> Report {
        Report {
            check: check.to_string(),
            dim,
            residual,
            pass: residual <= TOL && witnesses.is_empty(),
            witnesses,
        }
    }

    /// Named sub-residuals; each one over tolerance becomes a witness.
    pub fn from_parts(check: &str, dim: usize, parts: &[(&str, f64)]) -> Report {
        let residual = parts.iter().map(|p| p.1).fold(0.0, f64::max);
        let witnesses = parts
            .iter()
            .filter(|(_, r)| !(*r <= TOL))
            .map(|(name, r)| format!("{name}: {r:.3e}"))
            .collect();
        Report::new(check, dim, residual, witnesses)
    }

    /// Tracks the worst item of a quantified check.
    pub(crate) fn collect(check: &str, dim: usize, items: impl IntoIterator<Item = (String, f64)>) -> Report {
        let mut residual: f64 = 0.0;
        let mut witnesses = Vec::new();
        for (what, r) in items {
            if !(r <= TOL) {
                witnesses.push(format!("{what}: {r:.3e}"));
            }
            residual = if r.is_nan() { f64::INFINITY } else { residual.max(r) };
        }
        witnesses.truncate(8);
        Report::new(check, dim, residual, witnesses)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}
