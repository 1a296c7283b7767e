use serde::{Deserialize, Serialize};

/// Comparison thresholds used throughout the library.
///
/// `abs_eps`/`rel_eps` govern approximate equality of canonicalized values;
/// `zero_eps` decides when a quantity counts as zero (rank tests, cell
/// membership, sign variation).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct TolerancePolicy {
    pub abs_eps: f64,
    pub rel_eps: f64,
    pub zero_eps: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        Self {
            abs_eps: 1e-9,
            rel_eps: 1e-9,
            zero_eps: 1e-10,
        }
    }
}

impl TolerancePolicy {
    pub fn new(abs_eps: f64, rel_eps: f64, zero_eps: f64) -> Self {
        assert!(abs_eps > 0.0 && rel_eps > 0.0 && zero_eps > 0.0);
        Self {
            abs_eps,
            rel_eps,
            zero_eps,
        }
    }

    /// Uniform policy with all three thresholds equal to `eps`.
    pub fn uniform(eps: f64) -> Self {
        Self::new(eps, eps, eps)
    }

    /// True iff `|a - b| <= abs_eps + rel_eps * scale`.
    pub fn close_scaled(&self, a: f64, b: f64, scale: f64) -> bool {
        (a - b).abs() <= self.abs_eps + self.rel_eps * scale
    }
}
