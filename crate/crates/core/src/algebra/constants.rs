//! Fixed matrices: Pauli and Gell-Mann bases, the pairing form `ω` and the
//! symplectic form `τ` on the doubled mode space `(a₁..a_r, a†₁..a†_r)`.

use crate::types::C64;
use ndarray::Array2;

pub(crate) fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn from_rows(rows: &[&[C64]]) -> Array2<C64> {
    let n = rows.len();
    Array2::from_shape_fn((n, rows[0].len()), |(i, j)| rows[i][j])
}

/// The three Pauli matrices `σ₁, σ₂, σ₃`.
pub fn pauli() -> Vec<Array2<C64>> {
    let o = c(0.0, 0.0);
    let l = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    vec![
        from_rows(&[&[o, l], &[l, o]]),
        from_rows(&[&[o, -i], &[i, o]]),
        from_rows(&[&[l, o], &[o, -l]]),
    ]
}

/// The eight Gell-Mann matrices `λ₁..λ₈`, normalized by `tr(λ_a λ_b) = 2δ_ab`.
pub fn gell_mann() -> Vec<Array2<C64>> {
    let o = c(0.0, 0.0);
    let l = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    let s = c(1.0 / 3.0f64.sqrt(), 0.0);
    vec![
        from_rows(&[&[o, l, o], &[l, o, o], &[o, o, o]]),
        from_rows(&[&[o, -i, o], &[i, o, o], &[o, o, o]]),
        from_rows(&[&[l, o, o], &[o, -l, o], &[o, o, o]]),
        from_rows(&[&[o, o, l], &[o, o, o], &[l, o, o]]),
        from_rows(&[&[o, o, -i], &[o, o, o], &[i, o, o]]),
        from_rows(&[&[o, o, o], &[o, o, l], &[o, l, o]]),
        from_rows(&[&[o, o, o], &[o, o, -i], &[o, i, o]]),
        from_rows(&[&[s, o, o], &[o, s, o], &[o, o, -c(2.0, 0.0) * s]]),
    ]
}

/// Pairing form `ω = [[0, I], [I, 0]]` (2r × 2r).  `ωM` is hermitian exactly
/// when the bilinear `α M αᵀ` is a hermitian operator.
pub fn omega(r: usize) -> Array2<C64> {
    let mut w = Array2::zeros((2 * r, 2 * r));
    for k in 0..r {
        w[(k, r + k)] = c(1.0, 0.0);
        w[(r + k, k)] = c(1.0, 0.0);
    }
    w
}

/// Symplectic form `τ = [[0, I], [-I, 0]]` (2r × 2r), encoding the canonical
/// commutator `[α_i, α_j] = τ_ij` up to normalization.
pub fn tau(r: usize) -> Array2<C64> {
    let mut t = Array2::zeros((2 * r, 2 * r));
    for k in 0..r {
        t[(k, r + k)] = c(1.0, 0.0);
        t[(r + k, k)] = c(-1.0, 0.0);
    }
    t
}

/// Block-diagonal assembly `diag(a, b)` of two square matrices.
pub fn block_diag(a: &Array2<C64>, b: &Array2<C64>) -> Array2<C64> {
    let (na, nb) = (a.nrows(), b.nrows());
    let mut out = Array2::zeros((na + nb, na + nb));
    out.slice_mut(ndarray::s![..na, ..na]).assign(a);
    out.slice_mut(ndarray::s![na.., na..]).assign(b);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::adjoint;

    #[test]
    fn pauli_algebra() {
        let p = pauli();
        // σ₁σ₂ = iσ₃ and σᵢ² = 1
        let prod = p[0].dot(&p[1]);
        let expect = p[2].mapv(|z| z * c(0.0, 1.0));
        assert!((&prod - &expect).iter().all(|z| z.norm() < 1e-15));
        for m in &p {
            let sq = m.dot(m);
            assert!((&sq - &Array2::<C64>::eye(2)).iter().all(|z| z.norm() < 1e-15));
        }
    }

    #[test]
    fn gell_mann_normalization() {
        let g = gell_mann();
        for (a, ma) in g.iter().enumerate() {
            for (b, mb) in g.iter().enumerate() {
                let tr: C64 = ma.dot(mb).diag().sum();
                let want = if a == b { 2.0 } else { 0.0 };
                assert!(
                    (tr - c(want, 0.0)).norm() < 1e-14,
                    "tr(λ_{} λ_{}) = {tr}",
                    a + 1,
                    b + 1
                );
            }
        }
        for m in &g {
            assert!((m - &adjoint(m)).iter().all(|z| z.norm() < 1e-15), "not hermitian");
        }
    }

    #[test]
    fn omega_tau_shapes() {
        let w = omega(2);
        let t = tau(2);
        // ω² = 1, τ² = -1, ωτ = diag(-I, I)
        assert!((&w.dot(&w) - &Array2::<C64>::eye(4)).iter().all(|z| z.norm() < 1e-15));
        assert!((&t.dot(&t) + &Array2::<C64>::eye(4)).iter().all(|z| z.norm() < 1e-15));
        let wt = w.dot(&t);
        for k in 0..2 {
            assert_eq!(wt[(k, k)], c(-1.0, 0.0));
            assert_eq!(wt[(2 + k, 2 + k)], c(1.0, 0.0));
        }
    }
}
