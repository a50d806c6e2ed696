//! The determinant generating trace
//! `T(t) = f(t) · {(-1)^r det[e^{2τP(t)} e^{2τM(x)} - 1]}^{-1/2}`.
//!
//! Three concerns shape the implementation:
//!
//! * **Convergence.**  The formal trace exists only when a Gaussian-type
//!   convergence matrix has positive-definite hermitian part; that matrix is
//!   evaluated in the pole-free cancellation form
//!   `B = J(E-1)[(E+1) + J(E-1)]⁻¹`, `J = ωτ`, `E = e^{2τP} e^{2τM}`.
//!   The pointwise test misses the unit-circle (elliptic/oscillatory) case
//!   for Laurent families, where the sum is only Abel-convergent, so su(1,1)
//!   elements with `|ε|` in a band around 1 are reported divergent outright.
//! * **Branch.**  The square root is continued along the straight homotopy
//!   from an anchor element with a known closed form; the reference root is
//!   `f/T_anchor`, so any branch ambiguity in `f` itself cancels in the final
//!   ratio `f/R(1)`.
//! * **Poles.**  A vanishing endpoint determinant means `t` sits on a
//!   spectral point of the element (a pole of the generating function) and is
//!   reported as [`Error::SpectralPoint`].

use crate::algebra::{AlgebraElement, ProjectorFamily};
use crate::numerics::{
    definiteness, determinant, mat_exp, sqrt_branch_tracked, Definiteness,
};
use crate::types::{C64, ConvergenceStatus};
use crate::{Error, Result};
use ndarray::Array2;
use std::cell::RefCell;
use std::collections::HashMap;

/// Band around `|ε| = 1` inside which a Laurent-family trace is declared
/// divergent even though the pointwise predicate may pass.
const UNIT_CIRCLE_BAND: f64 = 1e-8;

/// Result of one generating-trace evaluation.
#[derive(Debug, Clone)]
pub struct TraceOutcome {
    pub value: Option<C64>,
    pub status: ConvergenceStatus,
    pub t_used: Vec<C64>,
    /// Number of adaptive step halvings the branch walk needed.
    pub branch_refinements: usize,
    pub detail: Option<String>,
}

impl TraceOutcome {
    fn no_value(status: ConvergenceStatus, t: &[C64], detail: String) -> Self {
        TraceOutcome {
            value: None,
            status,
            t_used: t.to_vec(),
            branch_refinements: 0,
            detail: Some(detail),
        }
    }
}

/// Memo of `e^{2τM(x(s))}` along one element's homotopy, shared across the
/// many `t` samples of a contour extraction (the exponential is independent
/// of `t`).  Keys are the dyadic `s` values the adaptive walker visits.
pub struct HomotopyCache {
    anchor: AlgebraElement,
    target: AlgebraElement,
    map: RefCell<HashMap<u64, Array2<C64>>>,
}

impl HomotopyCache {
    pub fn new(family: &ProjectorFamily, target: &AlgebraElement) -> Self {
        HomotopyCache {
            anchor: family.anchor_element(),
            target: target.clone(),
            map: RefCell::new(HashMap::new()),
        }
    }

    fn exp_s_at(&self, s: f64) -> Result<Array2<C64>> {
        let key = (s * (1u64 << 52) as f64).round() as u64;
        if let Some(hit) = self.map.borrow().get(&key) {
            return Ok(hit.clone());
        }
        let xs = self.anchor.lerp(&self.target, s)?;
        let e = mat_exp(&xs.s_matrix())?;
        self.map.borrow_mut().insert(key, e.clone());
        Ok(e)
    }
}

/// Evaluate the generating trace at `t`.  Math-level outcomes (divergent,
/// marginal, branch failure) land in the returned status; `Err` is reserved
/// for invalid input, spectral-point poles and numerical breakdown.
pub fn generating_trace(x: &AlgebraElement, t: &[C64]) -> Result<TraceOutcome> {
    let family = ProjectorFamily::new(x.group());
    let cache = HomotopyCache::new(&family, x);
    generating_trace_cached(x, t, &family, &cache)
}

pub fn generating_trace_cached(
    x: &AlgebraElement,
    t: &[C64],
    family: &ProjectorFamily,
    cache: &HomotopyCache,
) -> Result<TraceOutcome> {
    let r = x.group().modes();
    let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
    let exp_p = family.exp_2tau_p(t)?;

    // Laurent families: reject the unit-circle band the pointwise predicate
    // cannot see (the series is at best conditionally summable there).
    if family.is_laurent() {
        let data = super::spectral::spectral_data(x)?;
        let eps_mod = data.designated.expect("rank-1 designation").norm();
        if (eps_mod - 1.0).abs() <= UNIT_CIRCLE_BAND {
            return Ok(TraceOutcome::no_value(
                ConvergenceStatus::Divergent,
                t,
                format!("spectrum on the unit circle (|ε| = {eps_mod})"),
            ));
        }
    }

    // Pointwise convergence predicate at the endpoint.
    let e_end = exp_p.dot(&cache.exp_s_at(1.0)?);
    let status = match convergence_matrix(&e_end, r) {
        Ok(b) => match definiteness(&b)? {
            Definiteness::PositiveDefinite { .. } => ConvergenceStatus::Convergent,
            Definiteness::Marginal { .. } => ConvergenceStatus::Marginal,
            Definiteness::Indefinite { min_eigenvalue } => {
                return Ok(TraceOutcome::no_value(
                    ConvergenceStatus::Divergent,
                    t,
                    format!("convergence form indefinite (min eigenvalue {min_eigenvalue:.3e})"),
                ))
            }
        },
        // (E+1) + J(E-1) singular: treat as a marginal/critical point
        Err(_) => ConvergenceStatus::Marginal,
    };

    // Endpoint determinant: a zero is a pole of the generating function.
    let det_fn = |s: f64| -> Result<C64> {
        let prod = exp_p.dot(&cache.exp_s_at(s)?) - Array2::<C64>::eye(2 * r);
        Ok(determinant(&prod)? * C64::new(sign, 0.0))
    };
    let d_end = det_fn(1.0)?;
    let d_start = det_fn(0.0)?;
    if d_end.norm() < 1e-12 * d_start.norm().max(1.0) {
        return Err(Error::SpectralPoint);
    }

    // Branch-continued square root from the anchored reference.
    let f = family.prefactor(t)?;
    let anchor = family.anchor_value(t)?;
    let reference = f / anchor;
    match sqrt_branch_tracked(det_fn, reference) {
        Ok((root, path)) => Ok(TraceOutcome {
            value: Some(f / root),
            status,
            t_used: t.to_vec(),
            branch_refinements: path.refinements,
            detail: None,
        }),
        Err(Error::BranchPoint { s, .. }) => Ok(TraceOutcome::no_value(
            ConvergenceStatus::BranchFailure,
            t,
            format!("determinant vanished along the homotopy near s = {s:.4}"),
        )),
        Err(e) => Err(e),
    }
}

/// `B = J(E-1) [(E+1) + J(E-1)]⁻¹` with `J = ωτ = diag(-I, I)`.
fn convergence_matrix(e: &Array2<C64>, r: usize) -> Result<Array2<C64>> {
    let n = 2 * r;
    let eye = Array2::<C64>::eye(n);
    let mut j_em1 = e - &eye;
    for row in 0..r {
        for col in 0..n {
            j_em1[(row, col)] = -j_em1[(row, col)];
        }
    }
    let denom = &(e + &eye) + &j_em1;
    let inv = crate::numerics::inverse(&denom)
        .map_err(|_| Error::Linalg("convergence form denominator singular".into()))?;
    Ok(j_em1.dot(&inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Group;
    use crate::oracle::oracle_generating;
    use crate::types::ConvergenceStatus;

    fn cx(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn su2_zero_element_reproduces_anchor() {
        let x = AlgebraElement::zero(Group::Su2);
        let t = [cx(0.5, 0.0)];
        let out = generating_trace(&x, &t).unwrap();
        assert_eq!(out.status, ConvergenceStatus::Convergent);
        let v = out.value.unwrap();
        assert!((v - cx(4.0, 0.0)).norm() < 1e-10, "got {v}");
    }

    #[test]
    fn su2_matches_block_oracle() {
        let x = AlgebraElement::from_named(
            Group::Su2,
            &[("J1", cx(0.4, 0.1)), ("J3", cx(-0.7, 0.2))],
        )
        .unwrap();
        let t = [cx(0.35, 0.15)];
        let out = generating_trace(&x, &t).unwrap();
        let closed = out.value.unwrap();
        let (oracle, est) = oracle_generating(&x, &t, 80).unwrap();
        assert!(est < 1e-9, "oracle unsettled: {est}");
        assert!(
            (closed - oracle).norm() < 1e-8 * oracle.norm().max(1.0),
            "closed {closed} vs oracle {oracle}"
        );
    }

    #[test]
    fn su3_matches_block_oracle() {
        let x = AlgebraElement::from_named(
            Group::Su3,
            &[("T2", cx(0.3, 0.0)), ("T4", cx(0.0, 0.2)), ("T8", cx(0.3, -0.1))],
        )
        .unwrap();
        let t = [cx(0.12, 0.05), cx(0.1, -0.04)];
        let out = generating_trace(&x, &t).unwrap();
        let closed = out.value.unwrap();
        let (oracle, est) = oracle_generating(&x, &t, 28).unwrap();
        assert!(est < 1e-9, "oracle unsettled: {est}");
        assert!(
            (closed - oracle).norm() < 1e-8 * oracle.norm().max(1.0),
            "closed {closed} vs oracle {oracle}"
        );
    }

    #[test]
    fn su11_matches_block_oracle() {
        let x = AlgebraElement::from_named(
            Group::Su11,
            &[("K1", cx(0.2, 0.05)), ("K3", cx(-1.6, 0.1))],
        )
        .unwrap();
        let t = [cx(1.0, 0.2)];
        let out = generating_trace(&x, &t).unwrap();
        let closed = out.value.unwrap();
        let (oracle, est) = oracle_generating(&x, &t, 70).unwrap();
        assert!(est < 1e-8, "oracle unsettled: {est}");
        assert!(
            (closed - oracle).norm() < 1e-7 * oracle.norm().max(1.0),
            "closed {closed} vs oracle {oracle}"
        );
    }

    #[test]
    fn expanding_element_is_divergent() {
        // x = 2cK₃ with Re c > 0 grows e^{c n}: the weighted trace at t = 1.2
        // cannot converge, and the predicate must say so.
        let x = AlgebraElement::from_named(Group::Su11, &[("K3", cx(1.0, 0.0))]).unwrap();
        let out = generating_trace(&x, &[cx(1.2, 0.0)]).unwrap();
        assert_eq!(out.status, ConvergenceStatus::Divergent);
        assert!(out.value.is_none());
    }

    #[test]
    fn su2_outside_disc_is_divergent() {
        let x = AlgebraElement::zero(Group::Su2);
        let out = generating_trace(&x, &[cx(1.4, 0.0)]).unwrap();
        assert_eq!(out.status, ConvergenceStatus::Divergent);
    }

    #[test]
    fn elliptic_su11_rejected_by_band_check() {
        // purely elliptic rotation: |ε| = 1 exactly; the pointwise predicate
        // alone would accept it (Abel summability), the band check must not.
        let x = AlgebraElement::from_named(Group::Su11, &[("K3", cx(0.0, 0.9))]).unwrap();
        let out = generating_trace(&x, &[cx(1.0, 0.1)]).unwrap();
        assert_eq!(out.status, ConvergenceStatus::Divergent);
        assert!(out.detail.unwrap().contains("unit circle"));
    }

    #[test]
    fn pole_in_t_is_a_spectral_point() {
        // at x = -2βK₃ the su(1,1) generating function has poles at
        // t = e^{∓β}; hitting one must be reported, not silently continued.
        let x = AlgebraElement::from_named(Group::Su11, &[("K3", cx(-2.0, 0.0))]).unwrap();
        match generating_trace(&x, &[cx((-1.0f64).exp(), 0.0)]) {
            Err(Error::SpectralPoint) => {}
            other => panic!("expected spectral point, got {other:?}"),
        }
    }

    #[test]
    fn su11_spectral_radius_limits_t_annulus() {
        // hyperbolic x with ε ≈ e^{-0.55}: t inside the annulus converges,
        // t outside is divergent.
        let x = AlgebraElement::from_named(Group::Su11, &[("K3", cx(-1.1, 0.0))]).unwrap();
        let inside = generating_trace(&x, &[cx(1.3, 0.0)]).unwrap();
        assert_eq!(inside.status, ConvergenceStatus::Convergent);
        let outside = generating_trace(&x, &[cx(2.2, 0.0)]).unwrap();
        assert_eq!(outside.status, ConvergenceStatus::Divergent);
    }
}
