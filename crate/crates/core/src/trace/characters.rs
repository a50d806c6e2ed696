//! Closed-form traces over single irreducible subspaces.
//!
//! Finite-dimensional characters are evaluated through complete homogeneous
//! symmetric polynomials `h_k` of the `e^{ρ(x)}` spectrum — polynomial in the
//! eigenvalues, hence stable at and near spectral collisions where the Weyl
//! quotient form would be 0/0.

use super::spectral::{spectral_data, SpectralData};
use crate::algebra::{su11_exponent, AlgebraElement, Group};
use crate::types::{C64, IrrepLabel};
use crate::{Error, Result};

/// `h_k` for the spectrum with elementary symmetric functions
/// `(e₁, .., e_m)`, via `h_k = Σ_j (-1)^{j-1} e_j h_{k-j}`.
fn h_sequence(elem: &[C64], up_to: usize) -> Vec<C64> {
    let mut h = vec![C64::new(0.0, 0.0); up_to + 1];
    h[0] = C64::new(1.0, 0.0);
    for k in 1..=up_to {
        let mut acc = C64::new(0.0, 0.0);
        let mut sign = 1.0;
        for (j, ej) in elem.iter().enumerate() {
            if j + 1 > k {
                break;
            }
            acc += C64::new(sign, 0.0) * ej * h[k - j - 1];
            sign = -sign;
        }
        h[k] = acc;
    }
    h
}

/// Spin-`j` character `Σ_{m=-j}^{j} ε^{2m} = h_{2j}(ε, ε⁻¹)`.
pub fn su2_character(eps: C64, two_j: u32) -> C64 {
    let elem = [eps + eps.inv(), C64::new(1.0, 0.0)];
    h_sequence(&elem, two_j as usize)[two_j as usize]
}

/// su(3) character of irrep `(p, q)` from the `e^{ρ(x)}` eigenvalue triple:
/// `h_p(ε) h_q(ε⁻¹) - h_{p-1}(ε) h_{q-1}(ε⁻¹)`.
pub fn su3_character(eigs: &[C64], p: u32, q: u32) -> C64 {
    let e1: C64 = eigs.iter().sum();
    let e2 = eigs[0] * eigs[1] + eigs[0] * eigs[2] + eigs[1] * eigs[2];
    let e3 = eigs[0] * eigs[1] * eigs[2];
    // inverse spectrum: (e₂/e₃, e₁/e₃, 1/e₃)
    let fwd = [e1, e2, e3];
    let inv = [e2 / e3, e1 / e3, e3.inv()];
    let hp = h_sequence(&fwd, p as usize);
    let hq = h_sequence(&inv, q as usize);
    let mut chi = hp[p as usize] * hq[q as usize];
    if p > 0 && q > 0 {
        chi -= hp[p as usize - 1] * hq[q as usize - 1];
    }
    chi
}

/// Dimension of the su(3) irrep `(p, q)`.
pub fn su3_dimension(p: u32, q: u32) -> f64 {
    ((p + 1) * (q + 1) * (p + q + 2)) as f64 / 2.0
}

/// Discrete-series trace `ε^{2k} / (1 - ε²)` over one su(1,1) ladder, with
/// `ε` the designated (`|ε| < 1`) eigenvalue.  Swapping the two modes is an
/// algebra automorphism exchanging the `±` ladders, so the value depends on
/// `k` only.
pub fn su11_ladder_closed_form(eps: C64, k: f64) -> Result<C64> {
    if eps.norm() >= 1.0 - 1e-9 {
        return Err(Error::Divergent(format!(
            "ladder trace needs |ε| < 1, got |ε| = {}",
            eps.norm()
        )));
    }
    let denom = C64::new(1.0, 0.0) - eps * eps;
    // ε^{2k} for half-integer k via the principal log of the designated root
    let power = (C64::new(2.0 * k, 0.0) * eps.ln()).exp();
    Ok(power / denom)
}

/// Closed-form `tr e^{x̂}` over the irreducible subspace `label`.
pub fn irrep_trace(x: &AlgebraElement, label: &IrrepLabel) -> Result<C64> {
    let data = spectral_data(x)?;
    irrep_trace_from_spectrum(x.group(), &data, label)
}

pub fn irrep_trace_from_spectrum(
    group: Group,
    data: &SpectralData,
    label: &IrrepLabel,
) -> Result<C64> {
    match (group, label) {
        (Group::Su2, IrrepLabel::Su2 { two_j }) => {
            Ok(su2_character(data.designated.expect("rank-1 designation"), *two_j))
        }
        (Group::Su3, IrrepLabel::Su3 { p, q }) => Ok(su3_character(&data.eigenvalues, *p, *q)),
        (Group::Su11, IrrepLabel::Su11 { k, sign }) => {
            su11_exponent(*k, *sign)?; // validates the label
            su11_ladder_closed_form(data.designated.expect("rank-1 designation"), *k)
        }
        (g, l) => Err(Error::InvalidInput(format!("label {l} does not belong to {g}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::oracle_irrep_trace;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cx(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn su2_spin_one_at_half() {
        // frozen value: j = 1, ε = 1/2 ⇒ ε² + 1 + ε⁻² = 5.25
        let chi = su2_character(cx(0.5, 0.0), 2);
        assert!((chi - cx(5.25, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn su2_character_matches_quotient_form() {
        let eps = cx(0.3, 0.45);
        for two_j in 0..8u32 {
            let chi = su2_character(eps, two_j);
            let n = two_j as i32 + 1;
            let quotient = (eps.powi(n) - eps.powi(-n)) / (eps - eps.inv());
            assert!((chi - quotient).norm() < 1e-11 * quotient.norm().max(1.0));
        }
    }

    #[test]
    fn su2_degenerate_point_is_dimension() {
        for two_j in 0..6u32 {
            let chi = su2_character(cx(1.0, 0.0), two_j);
            assert!((chi - cx(two_j as f64 + 1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn su3_dimensions_from_unit_spectrum() {
        let ones = [cx(1.0, 0.0); 3];
        for (p, q) in [(0u32, 0u32), (1, 0), (1, 1), (2, 1), (3, 3)] {
            let chi = su3_character(&ones, p, q);
            assert!((chi - cx(su3_dimension(p, q), 0.0)).norm() < 1e-10);
        }
    }

    #[test]
    fn su2_closed_form_matches_block_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..6 {
            let coeffs: Vec<C64> =
                (0..3).map(|_| cx(rng.gen_range(-1.0..1.0), rng.gen_range(-0.5..0.5))).collect();
            let x = AlgebraElement::new(Group::Su2, coeffs).unwrap();
            for two_j in [0u32, 1, 2, 5] {
                let closed = irrep_trace(&x, &IrrepLabel::Su2 { two_j }).unwrap();
                let (oracle, _) =
                    oracle_irrep_trace(&x, &IrrepLabel::Su2 { two_j }, 0).unwrap();
                assert!(
                    (closed - oracle).norm() < 1e-10 * oracle.norm().max(1.0),
                    "j = {}/2: closed {closed} vs oracle {oracle}",
                    two_j
                );
            }
        }
    }

    #[test]
    fn su3_closed_form_matches_block_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..4 {
            let coeffs: Vec<C64> =
                (0..8).map(|_| cx(rng.gen_range(-0.6..0.6), rng.gen_range(-0.3..0.3))).collect();
            let x = AlgebraElement::new(Group::Su3, coeffs).unwrap();
            for (p, q) in [(0u32, 0u32), (1, 0), (0, 1), (1, 1), (2, 1), (2, 2)] {
                let closed = irrep_trace(&x, &IrrepLabel::Su3 { p, q }).unwrap();
                let (oracle, _) = oracle_irrep_trace(&x, &IrrepLabel::Su3 { p, q }, 0).unwrap();
                assert!(
                    (closed - oracle).norm() < 1e-9 * oracle.norm().max(1.0),
                    "({p},{q}): closed {closed} vs oracle {oracle}"
                );
            }
        }
    }

    #[test]
    fn su11_closed_form_matches_ladder_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let mut tested = 0;
        while tested < 5 {
            // random contraction-dominated element: K3-heavy keeps |ε| < 1
            let x = AlgebraElement::new(
                Group::Su11,
                vec![
                    cx(rng.gen_range(-0.3..0.3), rng.gen_range(-0.3..0.3)),
                    cx(rng.gen_range(-0.3..0.3), rng.gen_range(-0.3..0.3)),
                    cx(-1.2 + rng.gen_range(-0.3..0.3), rng.gen_range(-0.3..0.3)),
                ],
            )
            .unwrap();
            if !crate::trace::is_strongly_hyperbolic(&x, 0.8).unwrap() {
                continue;
            }
            tested += 1;
            for (k, sign) in [(0.5, 0i8), (1.0, 1), (1.5, -1), (2.5, 1)] {
                let label = IrrepLabel::Su11 { k, sign };
                let closed = irrep_trace(&x, &label).unwrap();
                let (oracle, est) = oracle_irrep_trace(&x, &label, 220).unwrap();
                assert!(est < 1e-10, "ladder truncation unsettled: {est}");
                assert!(
                    (closed - oracle).norm() < 1e-8 * oracle.norm().max(1.0),
                    "k = {k}, sign = {sign}: closed {closed} vs oracle {oracle}"
                );
            }
        }
    }

    #[test]
    fn su11_elliptic_is_divergent() {
        let x = AlgebraElement::from_named(Group::Su11, &[("K3", cx(0.0, 0.8))]).unwrap();
        match irrep_trace(&x, &IrrepLabel::Su11 { k: 1.0, sign: 1 }) {
            Err(Error::Divergent(_)) => {}
            other => panic!("expected divergence on the unit circle, got {other:?}"),
        }
    }
}
