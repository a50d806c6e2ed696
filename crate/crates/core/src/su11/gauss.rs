//! Triangular (Gauss) factorization of 2×2 unimodular group elements.
//!
//! In the fundamental representation the raising/lowering combinations
//! `K± = K₁ ± iK₂` map to strictly triangular matrices,
//! `ρ(K₊) = [[0,1],[0,0]]` and `ρ(K₋) = [[0,0],[-1,0]]`, so
//!
//! ```text
//! e^{λ₊ρ(K₊)} e^{λ₃ρ(K₃)} e^{λ₋ρ(K₋)}
//!   = [[e^{λ₃/2} - λ₊λ₋e^{-λ₃/2},  λ₊e^{-λ₃/2}],
//!      [-λ₋e^{-λ₃/2},              e^{-λ₃/2}  ]]
//! ```
//!
//! and the factorization reads off from the entries whenever the lower-right
//! entry is nonzero (the dense Gauss cell).

use crate::types::C64;
use crate::{Error, Result};
use ndarray::Array2;

const SINGULAR_THRESHOLD: f64 = 1e-12;

/// Factor triple with `g = e^{λ₊K₊} e^{λ₃K₃} e^{λ₋K₋}` in the fundamental
/// representation; `λ₃` carries the principal logarithm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussFactors {
    pub lambda_plus: C64,
    pub lambda_3: C64,
    pub lambda_minus: C64,
}

impl GaussFactors {
    pub fn new(lambda_plus: C64, lambda_3: C64, lambda_minus: C64) -> Self {
        GaussFactors { lambda_plus, lambda_3, lambda_minus }
    }

    /// Multiply the three factors back into a 2×2 matrix.
    pub fn reconstruct(&self) -> Array2<C64> {
        let half = (self.lambda_3 / 2.0).exp();
        let inv_half = half.inv();
        let (lp, lm) = (self.lambda_plus, self.lambda_minus);
        ndarray::array![
            [half - lp * lm * inv_half, lp * inv_half],
            [-lm * inv_half, inv_half],
        ]
    }
}

/// Factor a unimodular 2×2 matrix into the triangular triple.
///
/// Errors with [`Error::DecompositionSingular`] when the obstruction entry
/// `g₂₂` vanishes (the element lies outside the dense Gauss cell) and with
/// [`Error::InvalidInput`] when the matrix is not 2×2 unimodular.
pub fn gauss_decompose(g: &Array2<C64>) -> Result<GaussFactors> {
    if g.dim() != (2, 2) {
        return Err(Error::InvalidInput(format!("expected a 2×2 matrix, got {:?}", g.dim())));
    }
    let det = g[(0, 0)] * g[(1, 1)] - g[(0, 1)] * g[(1, 0)];
    if (det - C64::new(1.0, 0.0)).norm() > 1e-8 {
        return Err(Error::InvalidInput(format!("matrix is not unimodular: det = {det}")));
    }
    let g22 = g[(1, 1)];
    if g22.norm() <= SINGULAR_THRESHOLD {
        return Err(Error::DecompositionSingular { g22_abs: g22.norm() });
    }
    Ok(GaussFactors {
        lambda_plus: g[(0, 1)] / g22,
        lambda_3: -2.0 * g22.ln(),
        lambda_minus: -g[(1, 0)] / g22,
    })
}

/// The four-sign positivity test of the factored trace: all of
/// `Re(2 ± 2√(λ₊λ₋) ± 2e^{λ₃/2}) > 0` with the principal square root.
///
/// This is the condition under which the factored ladder sum converges
/// absolutely.  It misses the oscillatory unit-circle case in places (an
/// elliptic rotation can pass all four signs while the trace itself only
/// sums in the Abel sense), so callers combine it with the spectral
/// `|ε| < 1` gate.
pub fn bg_convergence(f: &GaussFactors) -> bool {
    let root = (f.lambda_plus * f.lambda_minus).sqrt();
    let half = (f.lambda_3 / 2.0).exp();
    [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)]
        .iter()
        .all(|&(s1, s2)| 2.0 + s1 * 2.0 * root.re + s2 * 2.0 * half.re > 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AlgebraElement, Group};
    use crate::numerics::mat_exp;
    use crate::Error;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cx(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn identity_has_zero_factors() {
        let f = gauss_decompose(&Array2::eye(2)).unwrap();
        assert_eq!(f, GaussFactors::new(cx(0.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0)));
    }

    #[test]
    fn diagonal_element_is_pure_cartan() {
        let beta = 0.7f64;
        let g = Array2::from_diag(&ndarray::arr1(&[cx((-beta).exp(), 0.0), cx(beta.exp(), 0.0)]));
        let f = gauss_decompose(&g).unwrap();
        assert!(f.lambda_plus.norm() < 1e-15);
        assert!(f.lambda_minus.norm() < 1e-15);
        assert!((f.lambda_3 - cx(-2.0 * beta, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn random_elements_reconstruct() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..50 {
            let x = AlgebraElement::new(
                Group::Su11,
                (0..3).map(|_| cx(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect(),
            )
            .unwrap();
            let g = mat_exp(&x.fundamental_matrix()).unwrap();
            let f = match gauss_decompose(&g) {
                Ok(f) => f,
                Err(Error::DecompositionSingular { .. }) => continue,
                Err(e) => panic!("unexpected error {e:?}"),
            };
            let back = f.reconstruct();
            let scale = g.iter().map(|z| z.norm()).fold(0.0, f64::max);
            let dev = (&back - &g).iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(dev < 1e-12 * scale.max(1.0), "reconstruction off by {dev:.2e}");
        }
    }

    #[test]
    fn outside_the_gauss_cell_is_rejected() {
        let g = ndarray::array![[cx(0.0, 0.0), cx(1.0, 0.0)], [cx(-1.0, 0.0), cx(0.0, 0.0)]];
        match gauss_decompose(&g) {
            Err(Error::DecompositionSingular { g22_abs }) => assert_eq!(g22_abs, 0.0),
            other => panic!("expected singular decomposition, got {other:?}"),
        }
        let bad = Array2::from_elem((2, 2), cx(1.0, 0.0));
        assert!(matches!(gauss_decompose(&bad), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn four_sign_test_known_cases() {
        // contracting Cartan direction: 2 ± 2e^{-β} all positive
        assert!(bg_convergence(&GaussFactors::new(cx(0.0, 0.0), cx(-1.4, 0.0), cx(0.0, 0.0))));
        // full elliptic loop λ₃ = 2πi: e^{λ₃/2} = -1 makes one sign vanish
        assert!(!bg_convergence(&GaussFactors::new(
            cx(0.0, 0.0),
            cx(0.0, 2.0 * std::f64::consts::PI),
            cx(0.0, 0.0)
        )));
        // identity: the trace over an infinite-dimensional ladder diverges
        assert!(!bg_convergence(&GaussFactors::new(cx(0.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0))));
        // dominant pair term
        assert!(!bg_convergence(&GaussFactors::new(cx(3.0, 0.0), cx(-1.0, 0.0), cx(3.0, 0.0))));
    }
}
