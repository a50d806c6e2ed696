//! Laurent/Taylor coefficient extraction by trapezoidal contour quadrature.
//!
//! For `F` analytic on an annulus containing the circle `|t| = R`, the
//! coefficient of `t^n` is `(1/N) Σ_j F(R e^{iθ_j}) R^{-n} e^{-inθ_j}` up to
//! aliasing that decays geometrically in `N`; doubling `N` until two
//! estimates agree gives a cheap, self-validating extraction.

use super::{CONTOUR_MAX_DOUBLINGS, CONTOUR_TOL};
use crate::types::C64;
use crate::{Error, Result};
use std::collections::BTreeMap;

/// Extract coefficients `c_n` for all `n` in `n_range` (inclusive) from
/// samples of `F` on the circle of radius `radius`.
///
/// Starts at `N = max(4·(max|n|+1), 16)` samples and doubles until successive
/// estimates agree to `1e-10` (mixed absolute/relative), failing with
/// [`Error::NoConvergence`] after 12 doublings.  Errors from `F` (for example
/// a divergent trace at one sample) abort the extraction.
pub fn contour_coefficients<F>(
    mut f: F,
    radius: f64,
    n_range: (i64, i64),
) -> Result<BTreeMap<i64, C64>>
where
    F: FnMut(C64) -> Result<C64>,
{
    let (lo, hi) = n_range;
    if lo > hi {
        return Err(Error::InvalidInput(format!("empty coefficient range {lo}..={hi}")));
    }
    if !(radius.is_finite() && radius > 0.0) {
        return Err(Error::InvalidInput(format!("contour radius must be positive, got {radius}")));
    }
    let max_abs_n = lo.unsigned_abs().max(hi.unsigned_abs());
    let mut n_samples = (4 * (max_abs_n + 1)).max(16).next_power_of_two() as usize;

    let mut prev: Option<BTreeMap<i64, C64>> = None;
    for _ in 0..=CONTOUR_MAX_DOUBLINGS {
        let estimate = extract_at(&mut f, radius, (lo, hi), n_samples)?;
        if let Some(p) = &prev {
            let mut worst = 0.0f64;
            for n in lo..=hi {
                let a = estimate[&n];
                let b = p[&n];
                let dev = (a - b).norm() / a.norm().max(1.0);
                worst = worst.max(dev);
            }
            if worst <= CONTOUR_TOL {
                return Ok(estimate);
            }
        }
        prev = Some(estimate);
        n_samples *= 2;
    }
    Err(Error::NoConvergence(format!(
        "contour extraction did not stabilize within {CONTOUR_MAX_DOUBLINGS} doublings"
    )))
}

/// Two-variable analogue of [`contour_coefficients`]: extract `c_{m,n}`,
/// the coefficient of `t^m u^n`, from samples on the torus
/// `|t| = radii.0, |u| = radii.1`.
///
/// The transform is separable (inner axis first), so the cost is dominated
/// by the `N1 × N2` function evaluations.  Both sample counts double
/// together until two estimates agree; the doubling cap is lower than in
/// the one-variable case because the grid grows quadratically.
pub fn contour_coefficients_2d<F>(
    mut f: F,
    radii: (f64, f64),
    m_range: (i64, i64),
    n_range: (i64, i64),
) -> Result<BTreeMap<(i64, i64), C64>>
where
    F: FnMut(C64, C64) -> Result<C64>,
{
    const MAX_DOUBLINGS_2D: u32 = 5;
    let (m_lo, m_hi) = m_range;
    let (n_lo, n_hi) = n_range;
    if m_lo > m_hi || n_lo > n_hi {
        return Err(Error::InvalidInput(format!(
            "empty coefficient range ({m_lo}..={m_hi}) x ({n_lo}..={n_hi})"
        )));
    }
    let (r1, r2) = radii;
    if !(r1.is_finite() && r1 > 0.0 && r2.is_finite() && r2 > 0.0) {
        return Err(Error::InvalidInput(format!("torus radii must be positive, got ({r1}, {r2})")));
    }
    let start = |lo: i64, hi: i64| {
        let max_abs = lo.unsigned_abs().max(hi.unsigned_abs());
        (4 * (max_abs + 1)).max(16).next_power_of_two() as usize
    };
    let mut n1 = start(m_lo, m_hi);
    let mut n2 = start(n_lo, n_hi);

    let mut prev: Option<BTreeMap<(i64, i64), C64>> = None;
    for _ in 0..=MAX_DOUBLINGS_2D {
        let estimate = extract_at_2d(&mut f, (r1, r2), (m_lo, m_hi), (n_lo, n_hi), (n1, n2))?;
        if let Some(p) = &prev {
            let mut worst = 0.0f64;
            for (key, a) in &estimate {
                let b = p[key];
                worst = worst.max((a - b).norm() / a.norm().max(1.0));
            }
            if worst <= CONTOUR_TOL {
                return Ok(estimate);
            }
        }
        prev = Some(estimate);
        n1 *= 2;
        n2 *= 2;
    }
    Err(Error::NoConvergence(format!(
        "torus extraction did not stabilize within {MAX_DOUBLINGS_2D} doublings"
    )))
}

fn extract_at_2d<F>(
    f: &mut F,
    (r1, r2): (f64, f64),
    (m_lo, m_hi): (i64, i64),
    (n_lo, n_hi): (i64, i64),
    (n1, n2): (usize, usize),
) -> Result<BTreeMap<(i64, i64), C64>>
where
    F: FnMut(C64, C64) -> Result<C64>,
{
    let angle = |j: usize, n: usize| 2.0 * std::f64::consts::PI * (j as f64) / (n as f64);
    // Inner transform: for each t-sample, reduce the u-circle to the
    // requested u-exponents.
    let n_count = (n_hi - n_lo + 1) as usize;
    let mut rows: Vec<Vec<C64>> = Vec::with_capacity(n1);
    for j1 in 0..n1 {
        let t = C64::from_polar(r1, angle(j1, n1));
        let mut values = Vec::with_capacity(n2);
        for j2 in 0..n2 {
            values.push(f(t, C64::from_polar(r2, angle(j2, n2)))?);
        }
        let mut row = vec![C64::new(0.0, 0.0); n_count];
        for (slot, n) in (n_lo..=n_hi).enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for (j2, v) in values.iter().enumerate() {
                acc += v * C64::from_polar(1.0, -(n as f64) * angle(j2, n2));
            }
            row[slot] = acc / C64::new(n2 as f64, 0.0) / C64::from_polar(r2, 0.0).powi(n as i32);
        }
        rows.push(row);
    }
    // Outer transform over the t-circle.
    let mut out = BTreeMap::new();
    for m in m_lo..=m_hi {
        for (slot, n) in (n_lo..=n_hi).enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for (j1, row) in rows.iter().enumerate() {
                acc += row[slot] * C64::from_polar(1.0, -(m as f64) * angle(j1, n1));
            }
            let c = acc / C64::new(n1 as f64, 0.0) / C64::from_polar(r1, 0.0).powi(m as i32);
            out.insert((m, n), c);
        }
    }
    Ok(out)
}

fn extract_at<F>(
    f: &mut F,
    radius: f64,
    (lo, hi): (i64, i64),
    n_samples: usize,
) -> Result<BTreeMap<i64, C64>>
where
    F: FnMut(C64) -> Result<C64>,
{
    let mut values = Vec::with_capacity(n_samples);
    for j in 0..n_samples {
        let theta = 2.0 * std::f64::consts::PI * (j as f64) / (n_samples as f64);
        values.push(f(C64::from_polar(radius, theta))?);
    }
    let mut out = BTreeMap::new();
    for n in lo..=hi {
        let mut acc = C64::new(0.0, 0.0);
        for (j, v) in values.iter().enumerate() {
            let theta = 2.0 * std::f64::consts::PI * (j as f64) / (n_samples as f64);
            acc += v * C64::from_polar(1.0, -(n as f64) * theta);
        }
        let c = acc / C64::new(n_samples as f64, 0.0) / C64::from_polar(radius, 0.0).powi(n as i32);
        out.insert(n, c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_coefficients_are_exact() {
        // F(t) = 3 - 2t + 5t^3
        let f = |t: C64| Ok(C64::new(3.0, 0.0) - C64::new(2.0, 0.0) * t + C64::new(5.0, 0.0) * t.powi(3));
        let c = contour_coefficients(f, 0.7, (0, 4)).unwrap();
        assert!((c[&0] - C64::new(3.0, 0.0)).norm() < 1e-12);
        assert!((c[&1] + C64::new(2.0, 0.0)).norm() < 1e-12);
        assert!(c[&2].norm() < 1e-12);
        assert!((c[&3] - C64::new(5.0, 0.0)).norm() < 1e-12);
        assert!(c[&4].norm() < 1e-12);
    }

    #[test]
    fn geometric_series_coefficients() {
        // 1/(1 - εt) has c_n = ε^n; ε = 0.5, c_3 = 0.125.
        let eps = C64::new(0.5, 0.0);
        let f = move |t: C64| Ok((C64::new(1.0, 0.0) - eps * t).inv());
        let c = contour_coefficients(f, 0.9, (0, 6)).unwrap();
        assert!((c[&3] - C64::new(0.125, 0.0)).norm() < 1e-10);
        for n in 0..=6 {
            assert!((c[&(n as i64)] - eps.powi(n)).norm() < 1e-10);
        }
    }

    #[test]
    fn laurent_negative_exponents() {
        // F(t) = 2/t + 7 + t: Laurent coefficients at n = -1, 0, 1.
        let f = |t: C64| Ok(C64::new(2.0, 0.0) / t + C64::new(7.0, 0.0) + t);
        let c = contour_coefficients(f, 1.3, (-2, 2)).unwrap();
        assert!((c[&-1] - C64::new(2.0, 0.0)).norm() < 1e-11);
        assert!((c[&0] - C64::new(7.0, 0.0)).norm() < 1e-11);
        assert!((c[&1] - C64::new(1.0, 0.0)).norm() < 1e-11);
        assert!(c[&-2].norm() < 1e-11);
        assert!(c[&2].norm() < 1e-11);
    }

    #[test]
    fn torus_extraction_of_product_series() {
        // F(t,u) = (1 - a t)^{-1} (1 - b/u)^{-1} has c_{m,n} = a^m b^{-n}
        // for m >= 0, n <= 0 and zero otherwise.
        let a = C64::new(0.6, 0.1);
        let b = C64::new(0.3, -0.2);
        let one = C64::new(1.0, 0.0);
        let f = move |t: C64, u: C64| Ok(((one - a * t) * (one - b / u)).inv());
        let c = contour_coefficients_2d(f, (1.0, 1.0), (0, 3), (-3, 1)).unwrap();
        for m in 0..=3i64 {
            for n in -3..=1i64 {
                let expect = if n <= 0 { a.powi(m as i32) * b.powi(-n as i32) } else { C64::new(0.0, 0.0) };
                assert!(
                    (c[&(m, n)] - expect).norm() < 1e-9,
                    "c_{{{m},{n}}} = {:?}, expected {expect:?}",
                    c[&(m, n)]
                );
            }
        }
    }

    #[test]
    fn sample_errors_propagate() {
        let f = |_t: C64| -> Result<C64> { Err(Error::Divergent("sample".into())) };
        assert!(contour_coefficients(f, 0.5, (0, 1)).is_err());
    }

    #[test]
    fn non_analytic_function_fails_to_converge() {
        // |t| is not analytic; estimates keep drifting.
        let f = |t: C64| Ok(C64::new(t.norm() + t.re * t.re * t.re, 0.0));
        match contour_coefficients(f, 1.0, (0, 3)) {
            Err(Error::NoConvergence(_)) => {}
            Ok(_) => {} // trapezoid can accidentally stabilize; accept but do not require
            Err(e) => panic!("unexpected error {e:?}"),
        }
    }
}
