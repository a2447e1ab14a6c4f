use thiserror::Error;

/// Errors surfaced by factorizations, cell detection, sampling, and groupoid
/// operations. Mathematical failures carry enough context to tell a genuine
/// domain error (point outside the big cell, mismatched cell labels) from a
/// numerical one (rank decision too close to call).
#[derive(Error, Debug, Clone, PartialEq)]
pub enum DbcError {
    /// A leading principal minor vanished: the matrix is not in N_- T N.
    #[error("big-cell factorization failed: leading principal minor {index} is zero (|pivot| = {pivot:.3e})")]
    BigCell { index: usize, pivot: f64 },

    /// Matrix inversion / linear solve hit a negligible pivot.
    #[error("singular matrix: pivot {pivot:.3e} below threshold")]
    Singular { pivot: f64 },

    /// Tolerance-based rank decisions did not yield a consistent cell label.
    #[error("rank pattern ambiguous near a cell boundary (n = {n})")]
    RankAmbiguity { n: usize },

    /// A rejection sampler ran out of retries.
    #[error("sampling exhausted after {retries} retries: {what}")]
    SamplingExhausted { what: String, retries: usize },

    /// Groupoid multiplication attempted on a non-composable pair.
    #[error("not composable: target/source flags differ by {dev:.3e}")]
    Composability { dev: f64 },

    /// Groupoid action attempted with mismatched moment values.
    #[error("moment map mismatch: flags differ by {dev:.3e}")]
    MomentMatch { dev: f64 },

    /// A cell-labelled point failed to factor as its label requires.
    #[error("factorization inconsistent with cell label: {0}")]
    Factorization(String),

    /// Malformed input payload (CLI / JSON surface).
    #[error("invalid input: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, DbcError>;
