//! Positive-definiteness tests for hermitian parts of convergence matrices.

use super::linalg::{cholesky_exceeds, hermitian_eigenvalues, hermitian_part, require_square};
use super::{DELTA_PD, MARGINAL_FACTOR};
use crate::types::C64;
use crate::Result;
use ndarray::Array2;

/// Three-way definiteness verdict for a hermitian matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Definiteness {
    /// Smallest eigenvalue clears the boundary with margin.
    PositiveDefinite { min_eigenvalue: f64 },
    /// Smallest eigenvalue within `±10·δ` of the boundary.
    Marginal { min_eigenvalue: f64 },
    /// Clearly not positive definite.
    Indefinite { min_eigenvalue: f64 },
}

impl Definiteness {
    /// Collapse to the plain boolean contract: all eigenvalues `> δ`.
    pub fn is_positive(&self) -> bool {
        match *self {
            Definiteness::PositiveDefinite { .. } => true,
            Definiteness::Marginal { min_eigenvalue } => min_eigenvalue > DELTA_PD,
            Definiteness::Indefinite { .. } => false,
        }
    }
}

/// Classify the hermitian part of `b` against the `δ = 1e-10` boundary.
///
/// A shifted Cholesky certifies the common, comfortably definite case without
/// an eigenvalue computation; near the boundary we fall back to hermitian
/// eigenvalues and report a `Marginal` band of width `10·δ`.
pub fn definiteness(b: &Array2<C64>) -> Result<Definiteness> {
    require_square(b)?;
    let h = hermitian_part(b);
    let band = MARGINAL_FACTOR * DELTA_PD;
    // Fast path: min eigenvalue certified above the marginal band.
    if cholesky_exceeds(&h, DELTA_PD + band) {
        // Cheap lower bound is enough for the verdict; report the bound.
        let ev = hermitian_eigenvalues(&h)?;
        let min = ev.into_iter().fold(f64::INFINITY, f64::min);
        return Ok(Definiteness::PositiveDefinite { min_eigenvalue: min });
    }
    let ev = hermitian_eigenvalues(&h)?;
    let min = ev.into_iter().fold(f64::INFINITY, f64::min);
    if (min - DELTA_PD).abs() <= band {
        Ok(Definiteness::Marginal { min_eigenvalue: min })
    } else if min > DELTA_PD {
        Ok(Definiteness::PositiveDefinite { min_eigenvalue: min })
    } else {
        Ok(Definiteness::Indefinite { min_eigenvalue: min })
    }
}

/// True iff every eigenvalue of the hermitian part of `b` exceeds `1e-10`.
pub fn hermitian_positive_definite(b: &Array2<C64>) -> Result<bool> {
    Ok(definiteness(b)?.is_positive())
}
