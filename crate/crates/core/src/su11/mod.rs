//! Applications of the su(1,1) trace machinery.
//!
//! Everything here flows from one fact: a group element near the identity
//! factors as `e^{λ₊K₊} e^{λ₃K₃} e^{λ₋K₋}`, and the discrete-series trace of
//! that product has a closed form in the contracting eigenvalue.  On top of
//! the factorization sit thermodynamic quantities (partition functions,
//! work-distribution characteristic functions after a quench) and a
//! complex-temperature scanner that locates partition-function zeros by
//! winding number.

mod bg;
mod gauss;
mod scan;
mod thermal;

pub use bg::{bg_radial_integral, bg_trace};
pub use gauss::{bg_convergence, gauss_decompose, GaussFactors};
pub use scan::{scan_zeros, CellStatus, ScanCandidate, ScanFunction, ScanGrid, ScanReport};
pub use thermal::{partition_function, work_characteristic};
