//! Traces of exponentiated boson bilinears over irreducible subspaces.
//!
//! A Lie algebra element `x` realized as a quadratic form in boson operators,
//! `x̂ = α M(x) αᵀ` with `α = (a₁..a_r, a†₁..a†_r)`, has group-theoretic traces
//! that collapse to finite determinants:
//!
//! ```text
//! Tr[ P̂(t) e^{x̂} ] = f(t) · { (-1)^r det[ e^{2τP(t)} e^{2τM(x)} - 1 ] }^{-1/2}
//! ```
//!
//! where `P̂(t)` is a weight projector family whose Taylor/Laurent coefficients
//! in `t` are the per-irrep traces.  This crate implements that machinery for
//! the Schwinger realization of su(2), the 3 ⊕ 3̄ realization of su(3) and the
//! two-mode pair realization of su(1,1), together with
//!
//! * closed-form per-irrep characters and their spectral data,
//! * branch-tracked square roots and contour coefficient extraction,
//! * a truncated Fock-space oracle that validates every closed form by dense
//!   exponentiation,
//! * Barut–Girardello style cross-checks (Gauss factorization, Bessel-kernel
//!   radial integrals) for su(1,1),
//! * thermodynamic applications: partition functions, two-time work
//!   characteristic functions, Jarzynski checks and complex-parameter zero
//!   scans.
//!
//! The `cli` module exposes the same operations as a small command-line tool;
//! see the `examples/` directory for runnable walkthroughs of each capability.

// Link the system BLAS so `ndarray::Array2::dot` uses it.
extern crate blas_src;

pub mod algebra;
pub mod cli;
pub mod error;
pub mod numerics;
pub mod oracle;
pub mod su11;
pub mod trace;
pub mod types;
pub mod verify;

pub use algebra::{build_algebra, AlgebraElement, AlgebraSpec, Group, ProjectorFamily};
pub use error::Error;
pub use types::{ConvergenceStatus, IrrepLabel, C64};

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
