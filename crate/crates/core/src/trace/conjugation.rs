//! Similarity invariance of the weighted trace.
//!
//! The weight operator is central, so conjugating the exponent by any group
//! element must leave the generating trace unchanged:
//! `Tr[P̂(t) e^{x̂}] = Tr[P̂(t) e^{ŷ}]` for `ρ(y) = e^{ρ(s)} ρ(x) e^{-ρ(s)}`.
//! This is a strong end-to-end consistency check — it exercises the
//! exponential map, the determinant formula, and the branch tracking on two
//! genuinely different matrices that must agree to full precision.

use super::generating::generating_trace;
use crate::algebra::{element_from_fundamental, AlgebraElement};
use crate::numerics::mat_exp;
use crate::types::{ConvergenceStatus, C64};
use crate::Result;

/// Outcome of comparing the generating trace before and after conjugation.
#[derive(Debug, Clone)]
pub struct ConjugationReport {
    /// Largest relative deviation over the sampled `t`; `None` when skipped.
    pub max_deviation: Option<f64>,
    /// True when some sample failed to converge on either side, so no
    /// comparison was possible there.
    pub skipped: bool,
    pub statuses: Vec<(ConvergenceStatus, ConvergenceStatus)>,
}

/// The element `y` with `ρ(y) = e^{ρ(s)} ρ(x) e^{-ρ(s)}` (the adjoint action
/// of the group element `e^{ρ(s)}` on `x`), recovered in the generator basis.
pub fn conjugated_element(x: &AlgebraElement, s: &AlgebraElement) -> Result<AlgebraElement> {
    let rho_s = s.fundamental_matrix();
    let fwd = mat_exp(&rho_s)?;
    let back = mat_exp(&rho_s.mapv(|z| -z))?;
    let y_fund = fwd.dot(&x.fundamental_matrix()).dot(&back);
    element_from_fundamental(x.group(), &y_fund)
}

/// Compare `Tr[P̂(t) e^{x̂}]` with the trace of the conjugated element at
/// each `t` tuple.  Samples where either side carries no value are skipped
/// (recorded in `statuses`); hard errors (poles, invalid input) propagate.
pub fn conjugation_invariance_check(
    x: &AlgebraElement,
    s: &AlgebraElement,
    t_samples: &[Vec<C64>],
) -> Result<ConjugationReport> {
    let y = conjugated_element(x, s)?;
    let mut max_deviation: Option<f64> = None;
    let mut skipped = false;
    let mut statuses = Vec::with_capacity(t_samples.len());
    for t in t_samples {
        let out_x = generating_trace(x, t)?;
        let out_y = generating_trace(&y, t)?;
        statuses.push((out_x.status, out_y.status));
        match (out_x.value, out_y.value) {
            (Some(a), Some(b)) => {
                let dev = (a - b).norm() / a.norm().max(1.0);
                max_deviation = Some(max_deviation.map_or(dev, |m| m.max(dev)));
            }
            _ => skipped = true,
        }
    }
    Ok(ConjugationReport { max_deviation, skipped, statuses })
}
