//! Thin complex linear-algebra helpers over `ndarray` + LAPACK.

use crate::types::C64;
use crate::{Error, Result};
use ndarray::Array2;
use ndarray_linalg::{Determinant, EigVals, EigValsh, Inverse, UPLO};

/// Complex identity matrix.
pub fn identity(n: usize) -> Array2<C64> {
    Array2::from_diag_elem(n, C64::new(1.0, 0.0))
}

/// Matrix 1-norm (maximum absolute column sum).
pub fn one_norm(a: &Array2<C64>) -> f64 {
    let mut best = 0.0f64;
    for col in a.columns() {
        let s: f64 = col.iter().map(|z| z.norm()).sum();
        best = best.max(s);
    }
    best
}

/// Conjugate transpose.
pub fn adjoint(a: &Array2<C64>) -> Array2<C64> {
    a.t().mapv(|z| z.conj())
}

/// Hermitian part `(A + A†)/2`.
pub fn hermitian_part(a: &Array2<C64>) -> Array2<C64> {
    let ad = adjoint(a);
    (a + &ad).mapv(|z| 0.5 * z)
}

/// Determinant via LU factorization.
pub fn determinant(a: &Array2<C64>) -> Result<C64> {
    Ok(a.det()?)
}

/// Matrix inverse.
pub fn inverse(a: &Array2<C64>) -> Result<Array2<C64>> {
    Ok(a.inv()?)
}

/// Eigenvalues of a general complex matrix, sorted by (re, im) for
/// deterministic output.
pub fn eigenvalues(a: &Array2<C64>) -> Result<Vec<C64>> {
    let ev = a.eigvals()?;
    let mut v: Vec<C64> = ev.to_vec();
    v.sort_by(|x, y| {
        x.re.partial_cmp(&y.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(x.im.partial_cmp(&y.im).unwrap_or(std::cmp::Ordering::Equal))
    });
    Ok(v)
}

/// Real eigenvalues of a hermitian matrix (ascending).
pub fn hermitian_eigenvalues(h: &Array2<C64>) -> Result<Vec<f64>> {
    let ev = h.eigvalsh(UPLO::Lower)?;
    Ok(ev.to_vec())
}

/// Attempt a Cholesky factorization of `H - shift·1`; success certifies that
/// all eigenvalues of hermitian `H` exceed `shift`.
pub fn cholesky_exceeds(h: &Array2<C64>, shift: f64) -> bool {
    use ndarray_linalg::Cholesky;
    let n = h.nrows();
    let shifted = h - &Array2::from_diag_elem(n, C64::new(shift, 0.0));
    shifted.cholesky(UPLO::Lower).is_ok()
}

/// Require a square matrix, returning its size.
pub fn require_square(a: &Array2<C64>) -> Result<usize> {
    if a.nrows() != a.ncols() {
        return Err(Error::InvalidInput(format!(
            "expected square matrix, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    Ok(a.nrows())
}
