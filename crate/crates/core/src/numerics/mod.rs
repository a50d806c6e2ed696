//! Numerical kernels: matrix exponential, definiteness tests, branch-tracked
//! square roots, contour coefficient extraction, Gaussian quadrature oracle
//! and modified Bessel functions.
//!
//! Everything here is deterministic; tolerances are fixed crate-wide constants
//! so results are reproducible bit-for-bit for a given input.

pub mod bessel;
pub mod branch;
pub mod contour;
pub mod definiteness;
pub mod gaussian;
pub mod linalg;
pub mod matexp;

pub use bessel::{bessel_i, bessel_k, ln_gamma};
pub use branch::{sqrt_branch_tracked, BranchPath, BranchSample};
pub use contour::{contour_coefficients, contour_coefficients_2d};
pub use definiteness::{definiteness, hermitian_positive_definite, Definiteness};
pub use gaussian::{gaussian_integral_oracle, GaussianForm};
pub use linalg::{adjoint, determinant, eigenvalues, hermitian_part, identity, inverse, one_norm};
pub use matexp::mat_exp;

/// Positive-definiteness boundary: eigenvalues of a hermitian part must exceed
/// this for a clean `Convergent` verdict.
pub const DELTA_PD: f64 = 1e-10;

/// Width multiplier of the marginal band around the definiteness boundary.
pub const MARGINAL_FACTOR: f64 = 10.0;

/// Branch-point threshold: a tracked determinant with modulus below this
/// aborts square-root continuation.
pub const DELTA_BRANCH: f64 = 1e-12;

/// Contour extraction: successive doublings must agree to this tolerance.
pub const CONTOUR_TOL: f64 = 1e-10;

/// Contour extraction: refinement budget before `NoConvergence`.
pub const CONTOUR_MAX_DOUBLINGS: usize = 12;
