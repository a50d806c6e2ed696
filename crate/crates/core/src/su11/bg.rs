//! Ladder traces through the triangular factorization.
//!
//! Two independent routes to `Tr_{2k} e^{x̂}`:
//!
//! * [`bg_trace`] — the factored coefficients satisfy a quadratic that is
//!   exactly the characteristic polynomial of `e^{ρ(x)}`; its contracting
//!   root `ε` feeds the closed form `ε^{2k}/(1-ε²)`.
//! * [`bg_radial_integral`] — an overlap integral over lowering-operator
//!   eigenstates, reducing to a product of three modified Bessel functions:
//!   `4 e^{λ₃/2} ∫₀^∞ r I₀(2√(λ₊λ₋) r) I_{2k-1}(2e^{λ₃/2} r) K_{2k-1}(2r) dr`,
//!   restricted here to real nonnegative `λ₊λ₋` and real `λ₃` (real Bessel
//!   arguments).
//!
//! Their agreement — and agreement with the spectral closed form and the
//! brute-force ladder sum — is the point: four derivations, one number.

use super::gauss::{bg_convergence, gauss_decompose, GaussFactors};
use crate::algebra::{AlgebraElement, Group};
use crate::numerics::{bessel_i, bessel_k, eigenvalues, mat_exp};
use crate::trace::{su11_ladder_closed_form, TraceOutcome};
use crate::types::{ConvergenceStatus, C64};
use crate::{Error, Result};

/// `Tr_{2k} e^{x̂}` via Gauss factorization and the characteristic-polynomial
/// root.  The convergence verdict combines the four-sign test on the factors
/// with the spectral `|ε| < 1` gate.
pub fn bg_trace(k: f64, x: &AlgebraElement) -> Result<TraceOutcome> {
    if x.group() != Group::Su11 {
        return Err(Error::InvalidInput(format!(
            "factored ladder trace is defined for su(1,1) elements, got {}",
            x.group()
        )));
    }
    if !(k > 0.0) {
        return Err(Error::InvalidInput(format!("ladder index k must be positive, got {k}")));
    }
    let g = mat_exp(&x.fundamental_matrix())?;
    let factors = gauss_decompose(&g)?;
    let eps = quadratic_root(&factors);

    // Guard against decomposition branch slips: the root must be an actual
    // eigenvalue of the group element.
    let eigs = eigenvalues(&g)?;
    let nearest = eigs
        .iter()
        .copied()
        .min_by(|a, b| (a - eps).norm().total_cmp(&(b - eps).norm()))
        .expect("2x2 matrix has eigenvalues");
    if (nearest - eps).norm() > 1e-8 * eps.norm().max(1.0) {
        return Err(Error::Internal(format!(
            "factored root {eps} is not an eigenvalue of the group element (nearest {nearest})"
        )));
    }

    let no_value = |detail: String| TraceOutcome {
        value: None,
        status: ConvergenceStatus::Divergent,
        t_used: Vec::new(),
        branch_refinements: 0,
        detail: Some(detail),
    };
    if !bg_convergence(&factors) {
        return Ok(no_value(format!(
            "four-sign positivity test failed on the factors (|ε| = {})",
            eps.norm()
        )));
    }
    match su11_ladder_closed_form(eps, k) {
        Ok(value) => Ok(TraceOutcome {
            value: Some(value),
            status: ConvergenceStatus::Convergent,
            t_used: Vec::new(),
            branch_refinements: 0,
            detail: None,
        }),
        Err(Error::Divergent(d)) => Ok(no_value(d)),
        Err(e) => Err(e),
    }
}

/// Contracting root of `ε² + e^{-λ₃/2}(λ₊λ₋ - e^{λ₃} - 1)ε + 1 = 0` (the
/// characteristic polynomial of the reconstructed element; the two roots
/// multiply to 1).  Ties pick the upper half plane.
fn quadratic_root(f: &GaussFactors) -> C64 {
    let one = C64::new(1.0, 0.0);
    let b = (-f.lambda_3 / 2.0).exp() * (f.lambda_plus * f.lambda_minus - f.lambda_3.exp() - one);
    let disc = (b * b - 4.0).sqrt();
    let (r1, r2) = ((-b + disc) / 2.0, (-b - disc) / 2.0);
    let (n1, n2) = (r1.norm(), r2.norm());
    if (n1 - n2).abs() < 1e-12 {
        if r1.im >= r2.im {
            r1
        } else {
            r2
        }
    } else if n1 < n2 {
        r1
    } else {
        r2
    }
}

/// The three-Bessel radial integral for the factored trace, on its real
/// domain: `λ₊λ₋` real ≥ 0, `λ₃` real, and `k ≥ 1/2` (Bessel order
/// `2k-1 ≥ 0`).  Errors with [`Error::Divergent`] when the four-sign test
/// fails (the integrand then grows) and [`Error::QuadratureFail`] when the
/// exponential tail cannot be bounded below 1e-10 inside the supported
/// Bessel argument range.
pub fn bg_radial_integral(k: f64, factors: &GaussFactors) -> Result<C64> {
    if k < 0.5 {
        return Err(Error::InvalidInput(format!(
            "radial route needs Bessel order 2k-1 ≥ 0, got k = {k}"
        )));
    }
    let lam = factors.lambda_plus * factors.lambda_minus;
    if lam.im.abs() > 1e-10 * lam.norm().max(1.0) || lam.re < -1e-12 {
        return Err(Error::InvalidInput(format!(
            "radial route needs real nonnegative λ₊λ₋, got {lam}"
        )));
    }
    if factors.lambda_3.im.abs() > 1e-10 {
        return Err(Error::InvalidInput(format!(
            "radial route needs real λ₃, got {}",
            factors.lambda_3
        )));
    }
    if !bg_convergence(factors) {
        return Err(Error::Divergent(
            "four-sign positivity test failed; the radial integrand grows".into(),
        ));
    }
    let a = 2.0 * lam.re.max(0.0).sqrt();
    let b = 2.0 * (factors.lambda_3.re / 2.0).exp();
    let nu = 2.0 * k - 1.0;
    // decay rate of the integrand: I grows like e^{(a+b)r}, K decays e^{-2r}
    let delta = 2.0 - a - b;
    debug_assert!(delta > 0.0, "four-sign test guarantees decay");
    // The largest Bessel argument is 2·r (the K factor; a, b < 2), so cap the
    // truncation radius to the supported argument range with headroom.
    let r_max = (35.0 / delta).min(122.0);
    if delta * r_max < 23.0 {
        return Err(Error::QuadratureFail(format!(
            "integrand decay {delta:.3} too slow to bound the tail beyond r = {r_max:.0}"
        )));
    }

    let integrand = |r: f64| -> Result<f64> {
        if r == 0.0 {
            return Ok(0.0);
        }
        let i0 = bessel_i(0.0, a * r)?;
        let inu = bessel_i(nu, b * r)?;
        let knu = bessel_k(nu, 2.0 * r)?;
        Ok(r * i0 * inu * knu)
    };
    // substitute r = v²: the weak endpoint singularity of K_ν at 0 (log for
    // ν = 0, fractional power otherwise) becomes Simpson-friendly
    let v_max = r_max.sqrt();
    let g = |v: f64| -> Result<f64> { Ok(2.0 * v * integrand(v * v)?) };
    let mut prev: Option<f64> = None;
    let mut integral = None;
    let mut n = 128usize;
    while n <= (1 << 15) {
        let estimate = simpson(&g, v_max, n)?;
        if let Some(p) = prev {
            if (estimate - p).abs() <= 1e-9 * estimate.abs().max(1.0) {
                integral = Some(estimate);
                break;
            }
        }
        prev = Some(estimate);
        n *= 2;
    }
    let integral = integral.ok_or_else(|| {
        Error::NoConvergence("radial quadrature did not stabilize".into())
    })?;
    let tail = integrand(r_max)?.abs() / delta;
    if tail > 1e-10 * integral.abs().max(1.0) {
        return Err(Error::QuadratureFail(format!(
            "tail beyond r = {r_max:.1} bounded only by {tail:.2e}"
        )));
    }
    Ok(C64::new(4.0 * (factors.lambda_3.re / 2.0).exp() * integral, 0.0))
}

/// Composite Simpson rule on `[0, upper]` with `n` (even) panels.
fn simpson<F>(f: &F, upper: f64, n: usize) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let h = upper / n as f64;
    let mut acc = f(0.0)? + f(upper)?;
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(i as f64 * h)?;
    }
    Ok(acc * h / 3.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::su11_ladder_trace;
    use crate::trace::irrep_trace;
    use crate::types::IrrepLabel;

    fn cx(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn cartan_frozen_point() {
        // x = -2βK₃ with e^{-2β} = 1/4: Tr_{2k} at k = 1/2 is the geometric
        // series (1/2)/(1 - 1/4) = 2/3.
        let beta = (2.0f64).ln();
        let x = AlgebraElement::from_named(Group::Su11, &[("K3", cx(-2.0 * beta, 0.0))]).unwrap();
        let out = bg_trace(0.5, &x).unwrap();
        assert_eq!(out.status, ConvergenceStatus::Convergent);
        assert!((out.value.unwrap() - cx(2.0 / 3.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn factored_route_matches_spectral_route() {
        // half-integer k: two independent derivations of the same trace
        let x = AlgebraElement::from_named(
            Group::Su11,
            &[("K1", cx(0.3, 0.1)), ("K2", cx(-0.2, 0.05)), ("K3", cx(-1.8, 0.2))],
        )
        .unwrap();
        for two_k in 1..=4u32 {
            let k = two_k as f64 / 2.0;
            let sign = if two_k == 1 { 0 } else { 1 };
            let spectral = irrep_trace(&x, &IrrepLabel::Su11 { k, sign }).unwrap();
            let factored = bg_trace(k, &x).unwrap().value.unwrap();
            assert!(
                (spectral - factored).norm() < 1e-9 * spectral.norm().max(1.0),
                "k = {k}: spectral {spectral} vs factored {factored}"
            );
        }
    }

    #[test]
    fn factored_route_matches_ladder_sum_at_real_k() {
        let x = AlgebraElement::from_named(
            Group::Su11,
            &[("K1", cx(0.25, 0.0)), ("K3", cx(-2.2, 0.15))],
        )
        .unwrap();
        let g = mat_exp(&x.fundamental_matrix()).unwrap();
        let f = gauss_decompose(&g).unwrap();
        for k in [0.37, 1.25] {
            let (ladder, _) =
                su11_ladder_trace(k, f.lambda_plus, f.lambda_3, f.lambda_minus, 400, 1e-8)
                    .unwrap();
            let factored = bg_trace(k, &x).unwrap().value.unwrap();
            assert!(
                (ladder - factored).norm() < 1e-6 * ladder.norm().max(1.0),
                "k = {k}: ladder {ladder} vs factored {factored}"
            );
        }
    }

    #[test]
    fn elliptic_element_is_divergent() {
        let x = AlgebraElement::from_named(Group::Su11, &[("K3", cx(0.0, 1.1))]).unwrap();
        let out = bg_trace(1.0, &x).unwrap();
        assert_eq!(out.status, ConvergenceStatus::Divergent);
        assert!(out.value.is_none());
    }

    #[test]
    fn outside_gauss_cell_propagates() {
        // e^{ρ(πK₂)} = -iσ₁ has a vanishing corner entry
        let x = AlgebraElement::from_named(
            Group::Su11,
            &[("K2", cx(std::f64::consts::PI, 0.0))],
        )
        .unwrap();
        assert!(matches!(bg_trace(0.5, &x), Err(Error::DecompositionSingular { .. })));
    }

    #[test]
    fn radial_integral_diagonal_case() {
        // (0, -2β, 0): the integral reduces to ∫ r I_{2k-1}(2e^{-β}r) K_{2k-1}(2r) dr
        let beta = (2.0f64).ln();
        let f = GaussFactors::new(cx(0.0, 0.0), cx(-2.0 * beta, 0.0), cx(0.0, 0.0));
        let v_half = bg_radial_integral(0.5, &f).unwrap();
        assert!((v_half - cx(2.0 / 3.0, 0.0)).norm() < 1e-8, "k=1/2 gave {v_half}");
        let v_one = bg_radial_integral(1.0, &f).unwrap();
        assert!((v_one - cx(1.0 / 3.0, 0.0)).norm() < 1e-6, "k=1 gave {v_one}");
    }

    #[test]
    fn radial_integral_matches_factored_route() {
        let f = GaussFactors::new(cx(0.2, 0.0), cx(-2.0, 0.0), cx(0.3, 0.0));
        let g = f.reconstruct();
        let eps = {
            let eigs = eigenvalues(&g).unwrap();
            if eigs[0].norm() < eigs[1].norm() {
                eigs[0]
            } else {
                eigs[1]
            }
        };
        for k in [0.5, 1.0, 1.5] {
            let closed = su11_ladder_closed_form(eps, k).unwrap();
            let quad = bg_radial_integral(k, &f).unwrap();
            assert!(
                (quad - closed).norm() < 1e-6 * closed.norm().max(1.0),
                "k = {k}: quadrature {quad} vs closed {closed}"
            );
        }
    }

    #[test]
    fn radial_integral_domain_gates() {
        // growing factors are rejected before integrating
        let f = GaussFactors::new(cx(0.0, 0.0), cx(1.2, 0.0), cx(0.0, 0.0));
        assert!(matches!(bg_radial_integral(0.5, &f), Err(Error::Divergent(_))));
        // complex λ₃ is out of the quadrature's scope
        let f = GaussFactors::new(cx(0.1, 0.0), cx(-1.0, 0.4), cx(0.1, 0.0));
        assert!(matches!(bg_radial_integral(0.5, &f), Err(Error::InvalidInput(_))));
        // Bessel order below zero unsupported
        let f = GaussFactors::new(cx(0.0, 0.0), cx(-1.0, 0.0), cx(0.0, 0.0));
        assert!(matches!(bg_radial_integral(0.37, &f), Err(Error::InvalidInput(_))));
    }
}
