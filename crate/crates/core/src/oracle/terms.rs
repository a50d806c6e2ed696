//! Normal-ordered boson operator terms and their action on occupation states.
//!
//! A bilinear `α M αᵀ` decomposes into number-conserving hops `a†_c a_a`,
//! pair creators/annihilators and a constant from normal-ordering the
//! `a a†` quadrant.  Terms act exactly on occupation-number states, which is
//! what makes truncated-space oracles trustworthy: no matrix is ever built
//! except over explicitly enumerated bases.

use crate::algebra::{AlgebraElement, Group};
use crate::types::C64;
use ndarray::Array2;
use std::collections::BTreeMap;

/// One normal-ordered monomial in mode operators.
#[derive(Debug, Clone, PartialEq)]
pub enum Term {
    /// `coeff · a†_create a_annihilate`
    NumberConserving { create: usize, annihilate: usize, coeff: C64 },
    /// `coeff · a†_p a†_q`
    PairCreate { p: usize, q: usize, coeff: C64 },
    /// `coeff · a_p a_q`
    PairAnnihilate { p: usize, q: usize, coeff: C64 },
    /// `coeff · 1`
    Constant { coeff: C64 },
}

/// Decompose `α M αᵀ` into normal-ordered terms.  `M` is `2r×2r` over the
/// ordering `(a₁..a_r, a†₁..a†_r)`; the `a a†` quadrant contributes its trace
/// as a constant.
pub fn terms_from_m(m: &Array2<C64>) -> Vec<Term> {
    let r = m.nrows() / 2;
    let mut out = Vec::new();
    let mut constant = C64::new(0.0, 0.0);
    for i in 0..2 * r {
        for j in 0..2 * r {
            let coeff = m[(i, j)];
            if coeff.norm() == 0.0 {
                continue;
            }
            match (i < r, j < r) {
                (true, true) => out.push(Term::PairAnnihilate { p: i, q: j, coeff }),
                (false, false) => out.push(Term::PairCreate { p: i - r, q: j - r, coeff }),
                (false, true) => {
                    out.push(Term::NumberConserving { create: i - r, annihilate: j, coeff })
                }
                (true, false) => {
                    // a_i a†_{j-r} = a†_{j-r} a_i + δ
                    out.push(Term::NumberConserving { create: j - r, annihilate: i, coeff });
                    if i == j - r {
                        constant += coeff;
                    }
                }
            }
        }
    }
    if constant.norm() != 0.0 {
        out.push(Term::Constant { coeff: constant });
    }
    out
}

/// Terms of an algebra element via its quadratic table.
pub fn element_terms(x: &AlgebraElement) -> Vec<Term> {
    terms_from_m(&x.m_matrix())
}

/// Number-conserving terms `Σ ρ_ij a†_{offset+i} a_{offset+j}` of a
/// single-sector hop matrix (no normal-ordering constant).
pub fn number_conserving_terms(rho: &Array2<C64>, offset: usize) -> Vec<Term> {
    let mut out = Vec::new();
    for i in 0..rho.nrows() {
        for j in 0..rho.ncols() {
            if rho[(i, j)].norm() != 0.0 {
                out.push(Term::NumberConserving {
                    create: offset + i,
                    annihilate: offset + j,
                    coeff: rho[(i, j)],
                });
            }
        }
    }
    out
}

/// Hand-written second-quantized definitions of every generator, used as the
/// ground truth the quadratic tables are tested against.
pub fn defining_terms(group: Group) -> Vec<Vec<Term>> {
    let half = C64::new(0.5, 0.0);
    let half_i = C64::new(0.0, 0.5);
    match group {
        Group::Su2 => vec![
            // J1 = (a₁†a₂ + a₂†a₁)/2
            vec![
                Term::NumberConserving { create: 0, annihilate: 1, coeff: half },
                Term::NumberConserving { create: 1, annihilate: 0, coeff: half },
            ],
            // J2 = (a₂†a₁ - a₁†a₂) i/2
            vec![
                Term::NumberConserving { create: 1, annihilate: 0, coeff: half_i },
                Term::NumberConserving { create: 0, annihilate: 1, coeff: -half_i },
            ],
            // J3 = (n₁ - n₂)/2
            vec![
                Term::NumberConserving { create: 0, annihilate: 0, coeff: half },
                Term::NumberConserving { create: 1, annihilate: 1, coeff: -half },
            ],
        ],
        Group::Su3 => {
            // T_a = Σ (λ_a/2)_{ij} a†_i a_j - Σ (λ_a/2)_{ji} b†_i b_j
            crate::algebra::gell_mann()
                .iter()
                .map(|lambda| {
                    let rho = lambda.mapv(|z| z * half);
                    let mut t = number_conserving_terms(&rho, 0);
                    t.extend(number_conserving_terms(&(-rho.t().to_owned()), 3));
                    t
                })
                .collect()
        }
        Group::Su11 => vec![
            // K1 = (a₁†a₂† + a₁a₂)/2
            vec![
                Term::PairCreate { p: 0, q: 1, coeff: half },
                Term::PairAnnihilate { p: 0, q: 1, coeff: half },
            ],
            // K2 = (a₁a₂ - a₁†a₂†) i/2
            vec![
                Term::PairAnnihilate { p: 0, q: 1, coeff: half_i },
                Term::PairCreate { p: 0, q: 1, coeff: -half_i },
            ],
            // K3 = (n₁ + n₂ + 1)/2
            vec![
                Term::NumberConserving { create: 0, annihilate: 0, coeff: half },
                Term::NumberConserving { create: 1, annihilate: 1, coeff: half },
                Term::Constant { coeff: half },
            ],
        ],
    }
}

/// Apply `amp · term` to `|occ⟩`, appending `(occupation, amplitude)` images.
fn apply_term(term: &Term, occ: &[u32], amp: C64, out: &mut Vec<(Vec<u32>, C64)>) {
    match term {
        Term::Constant { coeff } => out.push((occ.to_vec(), amp * coeff)),
        Term::NumberConserving { create, annihilate, coeff } => {
            if occ[*annihilate] == 0 {
                return;
            }
            let mut next = occ.to_vec();
            let f1 = (next[*annihilate] as f64).sqrt();
            next[*annihilate] -= 1;
            let f2 = ((next[*create] + 1) as f64).sqrt();
            next[*create] += 1;
            out.push((next, amp * coeff * C64::new(f1 * f2, 0.0)));
        }
        Term::PairCreate { p, q, coeff } => {
            let mut next = occ.to_vec();
            let f1 = ((next[*q] + 1) as f64).sqrt();
            next[*q] += 1;
            let f2 = ((next[*p] + 1) as f64).sqrt();
            next[*p] += 1;
            out.push((next, amp * coeff * C64::new(f1 * f2, 0.0)));
        }
        Term::PairAnnihilate { p, q, coeff } => {
            if occ[*q] == 0 {
                return;
            }
            let mut next = occ.to_vec();
            let f1 = (next[*q] as f64).sqrt();
            next[*q] -= 1;
            if next[*p] == 0 {
                return;
            }
            let f2 = (next[*p] as f64).sqrt();
            next[*p] -= 1;
            out.push((next, amp * coeff * C64::new(f1 * f2, 0.0)));
        }
    }
}

/// Image of `|occ⟩` under a sum of terms, merged by occupation.
pub fn apply_terms(terms: &[Term], occ: &[u32]) -> BTreeMap<Vec<u32>, C64> {
    let mut raw = Vec::new();
    for term in terms {
        apply_term(term, occ, C64::new(1.0, 0.0), &mut raw);
    }
    let mut merged: BTreeMap<Vec<u32>, C64> = BTreeMap::new();
    for (o, a) in raw {
        *merged.entry(o).or_insert_with(|| C64::new(0.0, 0.0)) += a;
    }
    merged.retain(|_, a| a.norm() > 0.0);
    merged
}

/// Defining terms of a whole element `Σ cᵢ gᵢ`.
pub fn defining_element_terms(x: &AlgebraElement) -> Vec<Term> {
    let defs = defining_terms(x.group());
    let mut out = Vec::new();
    for (ci, terms) in x.coeffs().iter().zip(defs) {
        if ci.norm() == 0.0 {
            continue;
        }
        for t in terms {
            out.push(match t {
                Term::NumberConserving { create, annihilate, coeff } => {
                    Term::NumberConserving { create, annihilate, coeff: coeff * ci }
                }
                Term::PairCreate { p, q, coeff } => Term::PairCreate { p, q, coeff: coeff * ci },
                Term::PairAnnihilate { p, q, coeff } => {
                    Term::PairAnnihilate { p, q, coeff: coeff * ci }
                }
                Term::Constant { coeff } => Term::Constant { coeff: coeff * ci },
            });
        }
    }
    out
}
