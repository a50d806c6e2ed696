//! Invariant-subspace bases and dense block traces.
//!
//! Every realization here conserves a weight: total number for su(2), the
//! two sector totals for su(3), and the mode difference `n₁-n₂` for su(1,1).
//! Blocks are therefore exact invariant subspaces; the only truncation is the
//! su(1,1) ladder height, whose error is estimated by halving.

use super::terms::{apply_terms, defining_element_terms, number_conserving_terms, Term};
use crate::algebra::{su11_exponent, AlgebraElement, Group};
use crate::numerics::mat_exp;
use crate::types::{C64, IrrepLabel};
use crate::{Error, Result};
use ndarray::Array2;
use std::collections::HashMap;

/// All ways to write `total` as an ordered sum of `parts` nonnegative ints.
pub fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            let mut v = Vec::with_capacity(parts);
            v.push(first);
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

enum BlockRule {
    /// `Σ occ = n` over all modes (exactly invariant, never truncated).
    TotalNumber(u32),
    /// First three modes sum to `p`, last three to `q`.
    PairTotals { p: u32, q: u32 },
    /// `occ[0] - occ[1] = d` (ladder; enumeration truncated in height).
    LadderDifference { d: i64 },
}

impl BlockRule {
    fn holds(&self, occ: &[u32]) -> bool {
        match self {
            BlockRule::TotalNumber(n) => occ.iter().sum::<u32>() == *n,
            BlockRule::PairTotals { p, q } => {
                occ[..3].iter().sum::<u32>() == *p && occ[3..].iter().sum::<u32>() == *q
            }
            BlockRule::LadderDifference { d } => occ[0] as i64 - occ[1] as i64 == *d,
        }
    }
}

/// An enumerated invariant block of Fock space.
pub struct SectorBasis {
    pub states: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    truncated: bool,
    rule: BlockRule,
}

impl SectorBasis {
    fn build(states: Vec<Vec<u32>>, truncated: bool, rule: BlockRule) -> Self {
        let index = states
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        SectorBasis { states, index, truncated, rule }
    }

    /// Two-mode states with `n₁+n₂ = n`: the spin `j = n/2` irrep.
    pub fn su2_sector(n: u32) -> Self {
        Self::build(compositions(n, 2), false, BlockRule::TotalNumber(n))
    }

    /// Six-mode states with quark total `p`, antiquark total `q`
    /// (`Sym^p(3) ⊗ Sym^q(3̄)`).
    pub fn su3_sector(p: u32, q: u32) -> Self {
        let mut states = Vec::new();
        for a in compositions(p, 3) {
            for b in compositions(q, 3) {
                let mut s = a.clone();
                s.extend_from_slice(&b);
                states.push(s);
            }
        }
        Self::build(states, false, BlockRule::PairTotals { p, q })
    }

    /// `modes`-mode states with fixed total `n` (one factor of the su(3)
    /// factorization, or anything number-conserving on its own).
    pub fn single_sector(modes: usize, n: u32) -> Self {
        Self::build(compositions(n, modes), false, BlockRule::TotalNumber(n))
    }

    /// su(1,1) ladder with `n₁-n₂ = d` (`d` may be negative), enumerated to
    /// height `m_max`: states `(m+d, m)` for `m = 0..=m_max`.
    pub fn su11_ladder(d: i64, m_max: usize) -> Self {
        let states = (0..=m_max as u32)
            .map(|m| {
                if d >= 0 {
                    vec![m + d as u32, m]
                } else {
                    vec![m, m + (-d) as u32]
                }
            })
            .collect();
        Self::build(states, true, BlockRule::LadderDifference { d })
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }
}

/// Dense matrix of a term list restricted to a block.  Images that satisfy
/// the block rule but lie beyond a truncated enumeration are dropped; images
/// that break the rule are an invariance violation and therefore a bug.
pub fn block_matrix(terms: &[Term], basis: &SectorBasis) -> Result<Array2<C64>> {
    let dim = basis.dim();
    let mut m = Array2::zeros((dim, dim));
    for (j, occ) in basis.states.iter().enumerate() {
        if !occ.is_empty() {
            for (img, amp) in apply_terms(terms, occ) {
                match basis.index.get(&img) {
                    Some(&i) => m[(i, j)] += amp,
                    None if basis.truncated && basis.rule.holds(&img) => {}
                    None => {
                        return Err(Error::Internal(format!(
                            "operator leaves the invariant block: {occ:?} -> {img:?}"
                        )))
                    }
                }
            }
        }
    }
    Ok(m)
}

/// `tr e^{x̂}` over one enumerated block, via dense exponentiation.
pub fn sector_trace(terms: &[Term], basis: &SectorBasis) -> Result<C64> {
    if basis.dim() == 0 {
        return Ok(C64::new(0.0, 0.0));
    }
    let block = block_matrix(terms, basis)?;
    Ok(mat_exp(&block)?.diag().sum())
}

/// Brute-force trace of `e^{x̂}` over a single irreducible subspace.
///
/// Returns `(value, error_estimate)`; the estimate is zero for the exactly
/// finite su(2)/su(3) blocks and a halved-truncation difference for su(1,1)
/// ladders of height `n_max`.
pub fn oracle_irrep_trace(
    x: &AlgebraElement,
    label: &IrrepLabel,
    n_max: usize,
) -> Result<(C64, f64)> {
    let terms = defining_element_terms(x);
    match (x.group(), label) {
        (Group::Su2, IrrepLabel::Su2 { two_j }) => {
            let tr = sector_trace(&terms, &SectorBasis::su2_sector(*two_j))?;
            Ok((tr, 0.0))
        }
        (Group::Su3, IrrepLabel::Su3 { p, q }) => {
            let mut tr = sector_trace(&terms, &SectorBasis::su3_sector(*p, *q))?;
            if *p > 0 && *q > 0 {
                tr -= sector_trace(&terms, &SectorBasis::su3_sector(*p - 1, *q - 1))?;
            }
            Ok((tr, 0.0))
        }
        (Group::Su11, IrrepLabel::Su11 { k, sign }) => {
            let n = su11_exponent(*k, *sign)?;
            let full = sector_trace(&terms, &SectorBasis::su11_ladder(n, n_max))?;
            let half = sector_trace(&terms, &SectorBasis::su11_ladder(n, n_max / 2))?;
            Ok((full, (full - half).norm()))
        }
        (g, l) => Err(Error::InvalidInput(format!("label {l} does not belong to {g}"))),
    }
}

/// Brute-force generating trace `Σ_sector weight(t) · tr_sector e^{x̂}` with
/// all sector sums truncated at `n_max`.  Returns `(value, estimate)` where
/// the estimate compares against the half-truncation result.
pub fn oracle_generating(x: &AlgebraElement, t: &[C64], n_max: usize) -> Result<(C64, f64)> {
    let full = oracle_generating_at(x, t, n_max)?;
    let half = oracle_generating_at(x, t, n_max / 2)?;
    Ok((full, (full - half).norm()))
}

fn oracle_generating_at(x: &AlgebraElement, t: &[C64], n_max: usize) -> Result<C64> {
    match x.group() {
        Group::Su2 => {
            if t.len() != 1 {
                return Err(Error::InvalidInput("su2 takes one variable".into()));
            }
            let terms = defining_element_terms(x);
            let mut sum = C64::new(0.0, 0.0);
            for n in 0..=n_max as u32 {
                sum += t[0].powi(n as i32) * sector_trace(&terms, &SectorBasis::su2_sector(n))?;
            }
            Ok(sum)
        }
        Group::Su3 => {
            if t.len() != 2 {
                return Err(Error::InvalidInput("su3 takes two variables".into()));
            }
            // Number conservation per sector factorizes the sum into
            // quark × antiquark single-sector series.
            let rho = x.fundamental_matrix();
            let rho_conj = x.conjugate_fundamental();
            let quark = single_sector_series(&rho, t[0], n_max)?;
            let anti = single_sector_series(&rho_conj, t[1], n_max)?;
            Ok(quark * anti)
        }
        Group::Su11 => {
            if t.len() != 1 {
                return Err(Error::InvalidInput("su11 takes one variable".into()));
            }
            let terms = defining_element_terms(x);
            let mut sum = C64::new(0.0, 0.0);
            for n in -(n_max as i64)..=n_max as i64 {
                let tr = sector_trace(&terms, &SectorBasis::su11_ladder(n, n_max))?;
                sum += t[0].powi(n as i32) * tr;
            }
            Ok(sum)
        }
    }
}

/// `Σ_n t^n tr_{Sym^n} e^{a†ρa}` for a single number-conserving sector.
fn single_sector_series(rho: &Array2<C64>, t: C64, n_max: usize) -> Result<C64> {
    let modes = rho.nrows();
    let terms = number_conserving_terms(rho, 0);
    let mut sum = C64::new(0.0, 0.0);
    for n in 0..=n_max as u32 {
        sum += t.powi(n as i32) * sector_trace(&terms, &SectorBasis::single_sector(modes, n))?;
    }
    Ok(sum)
}
