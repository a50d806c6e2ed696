//! Spectral data of the fundamental matrix: the eigenvalues of `e^{ρ(x)}`
//! drive every closed-form character.

use crate::algebra::{AlgebraElement, Group};
use crate::numerics::eigenvalues;
use crate::types::C64;
use crate::{Error, Result};

/// Eigenvalues of `e^{ρ(x)}` (unit determinant since `ρ` is traceless), with
/// a designated small eigenvalue for the rank-1 groups.
#[derive(Debug, Clone)]
pub struct SpectralData {
    pub eigenvalues: Vec<C64>,
    /// For su(2)/su(1,1): the eigenvalue `ε` with `|ε| ≤ 1` (on ties, the one
    /// with nonnegative imaginary part).
    pub designated: Option<C64>,
}

pub fn spectral_data(x: &AlgebraElement) -> Result<SpectralData> {
    let rho = x.fundamental_matrix();
    let lambdas = eigenvalues(&rho)?;
    let eigs: Vec<C64> = lambdas.iter().map(|l| l.exp()).collect();
    let det: C64 = eigs.iter().product();
    if (det - C64::new(1.0, 0.0)).norm() > 1e-8 * det.norm().max(1.0) {
        return Err(Error::Internal(format!(
            "fundamental exponential lost unimodularity: det = {det}"
        )));
    }
    let designated = match x.group() {
        Group::Su3 => None,
        _ => {
            let (a, b) = (eigs[0], eigs[1]);
            Some(pick_designated(a, b))
        }
    };
    Ok(SpectralData { eigenvalues: eigs, designated })
}

fn pick_designated(a: C64, b: C64) -> C64 {
    let (na, nb) = (a.norm(), b.norm());
    if (na - nb).abs() < 1e-12 {
        // elliptic pair e^{±iθ}: take the upper half plane representative
        if a.im >= b.im {
            a
        } else {
            b
        }
    } else if na < nb {
        a
    } else {
        b
    }
}

/// Designated (contracting) eigenvalue of a unit-determinant 2×2 matrix —
/// the same `|ε| ≤ 1` convention as [`spectral_data`], but starting from a
/// group element (e.g. a product of exponentials) instead of an algebra
/// element.
pub fn designated_of_matrix(g: &ndarray::Array2<C64>) -> Result<C64> {
    if g.dim() != (2, 2) {
        return Err(Error::InvalidInput(format!("expected a 2×2 matrix, got {:?}", g.dim())));
    }
    let eigs = eigenvalues(g)?;
    let det = eigs[0] * eigs[1];
    if (det - C64::new(1.0, 0.0)).norm() > 1e-8 * det.norm().max(1.0) {
        return Err(Error::InvalidInput(format!("matrix is not unimodular: det = {det}")));
    }
    Ok(pick_designated(eigs[0], eigs[1]))
}

/// `|ε| ≤ bound` with a safety margin away from the unit circle — the gate
/// for trusting truncated hyperbolic sums and Laurent extractions.
pub fn is_strongly_hyperbolic(x: &AlgebraElement, bound: f64) -> Result<bool> {
    let data = spectral_data(x)?;
    match data.designated {
        Some(eps) => Ok(eps.norm() <= bound),
        None => {
            let max = data.eigenvalues.iter().map(|z| z.norm()).fold(0.0, f64::max);
            let min = data.eigenvalues.iter().map(|z| z.norm()).fold(f64::MAX, f64::min);
            // spectral gap on both sides of the unit circle
            Ok(min <= bound && max >= 1.0 / bound)
        }
    }
}
