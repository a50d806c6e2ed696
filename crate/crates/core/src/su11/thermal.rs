//! Thermodynamics of su(1,1) Hamiltonians on a fixed discrete-series
//! representation: partition functions and, for sudden quenches
//! `H_i → H_f`, the characteristic function of the two-point-measurement
//! work distribution
//!
//! ```text
//! χ(u) = Tr[e^{iuH_f} e^{-iuH_i} e^{-βH_i}] / Tr[e^{-βH_i}].
//! ```
//!
//! Both reduce to the closed-form ladder trace `ε^{2k}/(1-ε²)` evaluated at
//! the contracting eigenvalue of a 2×2 product of exponentials — no operator
//! truncation anywhere.

use crate::algebra::{AlgebraElement, Group};
use crate::numerics::mat_exp;
use crate::trace::{designated_of_matrix, spectral_data, su11_ladder_closed_form};
use crate::types::C64;
use crate::{Error, Result};

pub(super) fn check_hamiltonian(name: &str, h: &AlgebraElement) -> Result<()> {
    if h.group() != Group::Su11 {
        return Err(Error::InvalidInput(format!(
            "{name} must be an su(1,1) element, got {}",
            h.group()
        )));
    }
    let scale = h.max_coeff().max(1.0);
    for (c, basis_name) in h.coeffs().iter().zip(["K1", "K2", "K3"]) {
        if c.im.abs() > 1e-12 * scale {
            return Err(Error::InvalidInput(format!(
                "{name} must be hermitian (real coefficients); {basis_name} has {c}"
            )));
        }
    }
    Ok(())
}

fn check_k_beta(k: f64, beta: f64) -> Result<()> {
    if !(k > 0.0) {
        return Err(Error::InvalidInput(format!("ladder index k must be positive, got {k}")));
    }
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::InvalidInput(format!(
            "inverse temperature must be positive and finite, got {beta}"
        )));
    }
    Ok(())
}

/// `Z = Tr_{2k} e^{-βH}` for a hermitian `H` (real coefficients).  Errors
/// with [`Error::Divergent`] when `e^{-βρ(H)}` is not contracting — an
/// unbounded-below `H`, for which no Gibbs state exists.
pub fn partition_function(k: f64, h: &AlgebraElement, beta: f64) -> Result<f64> {
    check_hamiltonian("the Hamiltonian", h)?;
    check_k_beta(k, beta)?;
    let data = spectral_data(&h.scale(C64::new(-beta, 0.0)))?;
    let eps = data.designated.expect("rank-1 group always designates");
    let z = su11_ladder_closed_form(eps, k)?;
    if z.im.abs() > 1e-10 * z.re.abs().max(1.0) || z.re <= 0.0 {
        return Err(Error::Internal(format!(
            "partition function of a hermitian Hamiltonian must be positive, got {z}"
        )));
    }
    Ok(z.re)
}

/// Characteristic function `χ(u) = ⟨e^{iuW}⟩` of the work done in a sudden
/// quench `H_i → H_f` starting from the Gibbs state of `H_i` at inverse
/// temperature `β`.  `u` may be complex: `χ(iβ)` gives the exponential work
/// average of the fluctuation relation, `Z_f/Z_i`.
///
/// At `u = 0` the two `u`-dependent factors are the identity and are skipped
/// outright, so numerator and denominator see bit-identical matrices and
/// `χ(0) = 1` holds exactly.
pub fn work_characteristic(
    k: f64,
    h_i: &AlgebraElement,
    h_f: &AlgebraElement,
    beta: f64,
    u: C64,
) -> Result<C64> {
    check_hamiltonian("the initial Hamiltonian", h_i)?;
    check_hamiltonian("the final Hamiltonian", h_f)?;
    check_k_beta(k, beta)?;
    let i = C64::new(0.0, 1.0);
    let gibbs = mat_exp(&h_i.scale(C64::new(-beta, 0.0)).fundamental_matrix())?;
    let product = if u == C64::new(0.0, 0.0) {
        gibbs.clone()
    } else {
        let forward = mat_exp(&h_f.scale(i * u).fundamental_matrix())?;
        let backward = mat_exp(&h_i.scale(-i * u).fundamental_matrix())?;
        forward.dot(&backward).dot(&gibbs)
    };

    let eps_u = designated_of_matrix(&product)?;
    let eps_i = designated_of_matrix(&gibbs)?;
    let numerator = su11_ladder_closed_form(eps_u, k)?;
    let denominator = su11_ladder_closed_form(eps_i, k)?;
    Ok(numerator / denominator)
}
