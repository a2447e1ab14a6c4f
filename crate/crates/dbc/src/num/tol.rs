use serde::{Deserialize, Serialize};

/// Comparison thresholds used throughout. `tol_eq` is the relative threshold
/// for equality of computed quantities, `tol_rank` the singular-value cutoff
/// for rank decisions, `tol_det` the allowed determinant drift of group
/// elements.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct Tolerance {
    pub tol_eq: f64,
    pub tol_rank: f64,
    pub tol_det: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            tol_eq: 1e-9,
            tol_rank: 1e-10,
            tol_det: 1e-10,
        }
    }
}

impl Tolerance {
    pub fn new(tol_eq: f64, tol_rank: f64, tol_det: f64) -> Self {
        assert!(tol_eq > 0.0 && tol_rank > 0.0 && tol_det > 0.0);
        Tolerance {
            tol_eq,
            tol_rank,
            tol_det,
        }
    }

    /// Uniform scaling of all three thresholds, for relaxed comparisons.
    pub fn scaled(&self, k: f64) -> Self {
        Tolerance::new(self.tol_eq * k, self.tol_rank * k, self.tol_det * k)
    }
}

/// Relative deviation |a - b| / max(|a|, |b|, floor).
pub fn rel_dev(a: f64, b: f64, floor: f64) -> f64 {
    (a - b).abs() / (a.abs().max(b.abs()).max(floor))
}
