//! Generator tables for the three supported algebras in their boson
//! realizations.
//!
//! Each generator `g` is stored two ways:
//!
//! * a *fundamental* matrix `ρ(g)` (2×2 for su(2)/su(1,1), 3×3 for su(3)),
//!   the source of spectral data and closed-form characters;
//! * a *quadratic* table `M(g)`, the complex-symmetric `2r×2r` matrix of the
//!   boson bilinear `ĝ = α M(g) αᵀ`, `α = (a₁..a_r, a†₁..a†_r)`.
//!
//! su(2) uses the two-mode Schwinger realization, su(3) the six-mode
//! fundamental ⊕ conjugate realization (`ρ' = -ρᵀ`), and su(1,1) the two-mode
//! pair realization `K₊ = a₁†a₂†`.

use super::constants::{block_diag, c, gell_mann, omega, pauli, tau};
use crate::types::C64;
use crate::{Error, Result};
use ndarray::Array2;
use serde::{Deserialize, Serialize};

/// Which algebra a value belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    Su2,
    Su3,
    Su11,
}

impl Group {
    /// Number of boson modes `r` in the realization.
    pub fn modes(self) -> usize {
        match self {
            Group::Su2 => 2,
            Group::Su3 => 6,
            Group::Su11 => 2,
        }
    }

    /// Number of generators.
    pub fn dim(self) -> usize {
        match self {
            Group::Su2 => 3,
            Group::Su3 => 8,
            Group::Su11 => 3,
        }
    }

    /// Dimension of the fundamental matrices.
    pub fn fundamental_dim(self) -> usize {
        match self {
            Group::Su2 | Group::Su11 => 2,
            Group::Su3 => 3,
        }
    }

    /// Generator names as used in the JSON element format.
    pub fn generator_names(self) -> &'static [&'static str] {
        match self {
            Group::Su2 => &["J1", "J2", "J3"],
            Group::Su3 => &["T1", "T2", "T3", "T4", "T5", "T6", "T7", "T8"],
            Group::Su11 => &["K1", "K2", "K3"],
        }
    }

    pub fn parse(name: &str) -> Result<Group> {
        match name.to_ascii_lowercase().as_str() {
            "su2" => Ok(Group::Su2),
            "su3" => Ok(Group::Su3),
            "su11" | "su1_1" | "su(1,1)" => Ok(Group::Su11),
            other => Err(Error::InvalidInput(format!("unknown group '{other}'"))),
        }
    }
}

impl std::fmt::Display for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Group::Su2 => write!(f, "su2"),
            Group::Su3 => write!(f, "su3"),
            Group::Su11 => write!(f, "su11"),
        }
    }
}

/// Generator tables and realization data for one algebra.
#[derive(Debug, Clone)]
pub struct AlgebraSpec {
    pub group: Group,
    fundamentals: Vec<Array2<C64>>,
    m_tables: Vec<Array2<C64>>,
}

/// Build the generator tables for `group`.
pub fn build_algebra(group: Group) -> AlgebraSpec {
    let fundamentals = fundamental_tables(group);
    let m_tables = match group {
        Group::Su2 => fundamentals.iter().map(number_conserving_m).collect(),
        Group::Su3 => {
            // six modes: ρ_full = diag(ρ, -ρᵀ) acting on quark ⊕ antiquark
            fundamentals
                .iter()
                .map(|rho| number_conserving_m(&block_diag(rho, &(-rho.t().to_owned()))))
                .collect()
        }
        Group::Su11 => su11_m_tables(),
    };
    AlgebraSpec { group, fundamentals, m_tables }
}

fn fundamental_tables(group: Group) -> Vec<Array2<C64>> {
    match group {
        Group::Su2 => pauli().into_iter().map(|s| s.mapv(|z| z * c(0.5, 0.0))).collect(),
        Group::Su3 => gell_mann().into_iter().map(|s| s.mapv(|z| z * c(0.5, 0.0))).collect(),
        Group::Su11 => {
            let p = pauli();
            vec![
                p[1].mapv(|z| z * c(0.0, 0.5)),  // K1 = i σ₂ / 2
                p[0].mapv(|z| z * c(0.0, -0.5)), // K2 = -i σ₁ / 2
                p[2].mapv(|z| z * c(0.5, 0.0)),  // K3 = σ₃ / 2
            ]
        }
    }
}

/// `M = [[0, ρᵀ/2], [ρ/2, 0]]`, realizing `a† ρ a + tr(ρ)/2`.
fn number_conserving_m(rho: &Array2<C64>) -> Array2<C64> {
    let r = rho.nrows();
    let mut m = Array2::zeros((2 * r, 2 * r));
    for p in 0..r {
        for q in 0..r {
            m[(p, r + q)] = 0.5 * rho[(q, p)];
            m[(r + p, q)] = 0.5 * rho[(p, q)];
        }
    }
    m
}

fn su11_m_tables() -> Vec<Array2<C64>> {
    let e = pauli().remove(0); // [[0,1],[1,0]]
    let quarter = |f: C64| e.mapv(|z| z * f * c(0.25, 0.0));
    // K1 = (a₁a₂ + a₁†a₂†)/2, K2 = (a₁a₂ - a₁†a₂†)/(2i) ⇒ pair blocks ±iE/4
    let k1 = block_diag(&quarter(c(1.0, 0.0)), &quarter(c(1.0, 0.0)));
    let k2 = block_diag(&quarter(c(0.0, 1.0)), &quarter(c(0.0, -1.0)));
    // K3 = (n₁ + n₂ + 1)/2 is number-conserving with ρ = I/2
    let k3 = number_conserving_m(&Array2::eye(2).mapv(|z: C64| z * c(0.5, 0.0)));
    vec![k1, k2, k3]
}

impl AlgebraSpec {
    pub fn modes(&self) -> usize {
        self.group.modes()
    }

    /// Fundamental matrix `ρ(gᵢ)`.
    pub fn fundamental(&self, i: usize) -> &Array2<C64> {
        &self.fundamentals[i]
    }

    /// Quadratic table `M(gᵢ)`.
    pub fn m_table(&self, i: usize) -> &Array2<C64> {
        &self.m_tables[i]
    }

    /// Symplectic image `S(gᵢ) = 2 τ M(gᵢ)`; `S` is a Lie-algebra
    /// homomorphism from boson bilinears into `gl(2r)`.
    pub fn s_table(&self, i: usize) -> Array2<C64> {
        let r = self.modes();
        tau(r).dot(&self.m_tables[i]).mapv(|z| z * c(2.0, 0.0))
    }

    /// `ω` and `τ` at this algebra's mode count.
    pub fn omega(&self) -> Array2<C64> {
        omega(self.modes())
    }

    pub fn tau(&self) -> Array2<C64> {
        tau(self.modes())
    }
}
