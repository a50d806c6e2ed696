//! Crate error type.

use thiserror::Error;

/// Everything that can go wrong while assembling or evaluating a trace.
#[derive(Error, Debug)]
pub enum Error {
    /// Inputs violate a documented precondition (dimension, label, range, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A quantity is requested at a point where the underlying series or
    /// integral does not converge.
    #[error("divergent: {0}")]
    Divergent(String),

    /// The determinant path crossed (or started on) a branch point.
    #[error("branch point: |f| < {threshold:e} at path parameter {s}")]
    BranchPoint { s: f64, threshold: f64 },

    /// `e^{2τA} - 1` is singular: the projector parameter sits on a spectral
    /// point of the element.
    #[error("singular matrix: projector parameter coincides with a spectral point")]
    SpectralPoint,

    /// Gauss factorization does not exist (lower-right entry ~ 0).
    #[error("gauss factorization singular: |g22| = {g22_abs:e} <= 1e-12")]
    DecompositionSingular { g22_abs: f64 },

    /// An iterative scheme exhausted its refinement budget.
    #[error("no convergence: {0}")]
    NoConvergence(String),

    /// A truncated sum or quadrature failed its own error estimate.
    #[error("not converged: residual estimate {estimate:e} exceeds {tolerance:e}")]
    NotConverged { estimate: f64, tolerance: f64 },

    /// Numerical quadrature could not bound its tail.
    #[error("quadrature failure: {0}")]
    QuadratureFail(String),

    /// Result overflowed the floating-point range.
    #[error("overflow: {0}")]
    Overflow(String),

    /// Requested Fock truncation exceeds the memory cap.
    #[error("memory cap: {nnz} nonzeros requested, cap is {cap}")]
    MemoryCap { nnz: usize, cap: usize },

    /// A LAPACK call failed (singular factorization, no convergence, ...).
    #[error("linear algebra: {0}")]
    Linalg(String),

    /// Malformed job configuration (CLI).
    #[error("invalid config: {0}")]
    InvalidConfig(String),

    /// I/O while reading config or writing outputs.
    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    /// JSON (de)serialization.
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    /// Internal consistency check failed; indicates a bug, not bad input.
    #[error("internal: {0}")]
    Internal(String),
}

impl From<ndarray_linalg::error::LinalgError> for Error {
    fn from(e: ndarray_linalg::error::LinalgError) -> Self {
        Error::Linalg(e.to_string())
    }
}
