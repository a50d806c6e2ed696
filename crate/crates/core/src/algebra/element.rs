//! Algebra elements as complex coefficient vectors over the generator basis,
//! with the JSON wire format `{"group": ..., "coeffs": {"J3": [re, im]}}`.

use super::spec::{build_algebra, AlgebraSpec, Group};
use crate::types::C64;
use crate::{Error, Result};
use ndarray::{Array1, Array2};
use ndarray_linalg::Solve;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::OnceLock;

/// Cached generator tables, one set per group.
pub fn algebra(group: Group) -> &'static AlgebraSpec {
    static SU2: OnceLock<AlgebraSpec> = OnceLock::new();
    static SU3: OnceLock<AlgebraSpec> = OnceLock::new();
    static SU11: OnceLock<AlgebraSpec> = OnceLock::new();
    match group {
        Group::Su2 => SU2.get_or_init(|| build_algebra(Group::Su2)),
        Group::Su3 => SU3.get_or_init(|| build_algebra(Group::Su3)),
        Group::Su11 => SU11.get_or_init(|| build_algebra(Group::Su11)),
    }
}

/// An element `x = Σᵢ cᵢ gᵢ` with complex coefficients.
///
/// Real coefficients make the boson bilinear `x̂` hermitian; complex ones are
/// allowed everywhere and arise naturally (e.g. `iβH` arguments).
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement {
    group: Group,
    coeffs: Vec<C64>,
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    group: Group,
    coeffs: BTreeMap<String, [f64; 2]>,
}

impl AlgebraElement {
    pub fn new(group: Group, coeffs: Vec<C64>) -> Result<Self> {
        if coeffs.len() != group.dim() {
            return Err(Error::InvalidInput(format!(
                "{group} needs {} coefficients, got {}",
                group.dim(),
                coeffs.len()
            )));
        }
        Ok(AlgebraElement { group, coeffs })
    }

    pub fn zero(group: Group) -> Self {
        AlgebraElement { group, coeffs: vec![C64::new(0.0, 0.0); group.dim()] }
    }

    /// Build from `(name, coefficient)` pairs; unnamed generators are zero.
    pub fn from_named(group: Group, parts: &[(&str, C64)]) -> Result<Self> {
        let names = group.generator_names();
        let mut coeffs = vec![C64::new(0.0, 0.0); group.dim()];
        for (name, value) in parts {
            let idx = names
                .iter()
                .position(|n| n.eq_ignore_ascii_case(name))
                .ok_or_else(|| {
                    Error::InvalidInput(format!("unknown generator '{name}' for {group}"))
                })?;
            coeffs[idx] += value;
        }
        Ok(AlgebraElement { group, coeffs })
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn coeff_by_name(&self, name: &str) -> Option<C64> {
        self.group
            .generator_names()
            .iter()
            .position(|n| n.eq_ignore_ascii_case(name))
            .map(|i| self.coeffs[i])
    }

    /// Largest coefficient magnitude.
    pub fn max_coeff(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Quadratic realization `M(x) = Σ cᵢ M(gᵢ)` (2r × 2r, complex symmetric).
    pub fn m_matrix(&self) -> Array2<C64> {
        let alg = algebra(self.group);
        let mut m = Array2::zeros((2 * alg.modes(), 2 * alg.modes()));
        for (i, ci) in self.coeffs.iter().enumerate() {
            if ci.norm() != 0.0 {
                m = m + alg.m_table(i).mapv(|z| z * ci);
            }
        }
        m
    }

    /// Symplectic image `S(x) = 2 τ M(x)`.
    pub fn s_matrix(&self) -> Array2<C64> {
        let alg = algebra(self.group);
        alg.tau().dot(&self.m_matrix()).mapv(|z| z * C64::new(2.0, 0.0))
    }

    /// Fundamental matrix `ρ(x) = Σ cᵢ ρ(gᵢ)`.
    pub fn fundamental_matrix(&self) -> Array2<C64> {
        let alg = algebra(self.group);
        let d = self.group.fundamental_dim();
        let mut m = Array2::zeros((d, d));
        for (i, ci) in self.coeffs.iter().enumerate() {
            if ci.norm() != 0.0 {
                m = m + alg.fundamental(i).mapv(|z| z * ci);
            }
        }
        m
    }

    /// Conjugate-sector matrix `ρ'(x) = -ρ(x)ᵀ` (the antiquark block of the
    /// six-mode su(3) realization).
    pub fn conjugate_fundamental(&self) -> Array2<C64> {
        -self.fundamental_matrix().t().to_owned()
    }

    pub fn scale(&self, factor: C64) -> Self {
        AlgebraElement {
            group: self.group,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::InvalidInput(format!(
                "cannot add {} and {} elements",
                self.group, other.group
            )));
        }
        Ok(AlgebraElement {
            group: self.group,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Straight-line interpolation `(1-s)·self + s·other` (homotopy paths).
    pub fn lerp(&self, other: &AlgebraElement, s: f64) -> Result<Self> {
        self.scale(C64::new(1.0 - s, 0.0))
            .add(&other.scale(C64::new(s, 0.0)))
    }

    pub fn to_json(&self) -> String {
        let names = self.group.generator_names();
        let coeffs = names
            .iter()
            .zip(&self.coeffs)
            .map(|(n, c)| (n.to_string(), [c.re, c.im]))
            .collect();
        serde_json::to_string(&ElementJson { group: self.group, coeffs }).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let parsed: ElementJson = serde_json::from_str(text)?;
        let parts: Vec<(&str, C64)> = parsed
            .coeffs
            .iter()
            .map(|(n, [re, im])| (n.as_str(), C64::new(*re, *im)))
            .collect();
        AlgebraElement::from_named(parsed.group, &parts)
    }
}

/// Expand a fundamental-space matrix in the generator basis by solving the
/// Gram system `Σⱼ tr(ρᵢρⱼ) cⱼ = tr(ρᵢ y)`; errors if `y` is not in the span.
pub fn expand_in_fundamental(alg: &AlgebraSpec, y: &Array2<C64>) -> Result<Vec<C64>> {
    let n = alg.group.dim();
    let d = alg.group.fundamental_dim();
    if y.nrows() != d || y.ncols() != d {
        return Err(Error::InvalidInput(format!(
            "expected a {d}x{d} matrix for {}",
            alg.group
        )));
    }
    let trace_of = |a: &Array2<C64>, b: &Array2<C64>| -> C64 { a.dot(b).diag().sum() };
    let mut gram = Array2::<C64>::zeros((n, n));
    let mut rhs = Array1::<C64>::zeros(n);
    for i in 0..n {
        for j in 0..n {
            gram[(i, j)] = trace_of(alg.fundamental(i), alg.fundamental(j));
        }
        rhs[i] = trace_of(alg.fundamental(i), y);
    }
    let coeffs = gram
        .solve(&rhs)
        .map_err(|e| Error::Linalg(format!("gram solve failed: {e}")))?;

    let mut recon = Array2::<C64>::zeros((d, d));
    for (i, ci) in coeffs.iter().enumerate() {
        recon = recon + alg.fundamental(i).mapv(|z| z * ci);
    }
    let scale = y.iter().map(|z| z.norm()).fold(1e-30, f64::max);
    let resid = (&recon - y).iter().map(|z| z.norm()).fold(0.0, f64::max);
    if resid > 1e-10 * scale.max(1.0) {
        return Err(Error::InvalidInput(format!(
            "matrix is not in the generator span (residual {resid:.2e}); \
             check that it is traceless"
        )));
    }
    Ok(coeffs.to_vec())
}

/// Map a fundamental-space matrix back to an element, validating membership.
pub fn element_from_fundamental(group: Group, y: &Array2<C64>) -> Result<AlgebraElement> {
    let coeffs = expand_in_fundamental(algebra(group), y)?;
    AlgebraElement::new(group, coeffs)
}
