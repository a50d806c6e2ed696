//! Truncated Fock-space oracles: every closed-form trace in this crate is
//! checked against dense exponentiation over explicitly enumerated invariant
//! blocks, built from hand-written second-quantized operator definitions.

mod blocks;
mod ladder;
mod terms;

pub use blocks::{
    block_matrix, compositions, oracle_generating, oracle_irrep_trace, sector_trace, SectorBasis,
};
pub use ladder::su11_ladder_trace;
pub use terms::{
    apply_terms, defining_element_terms, defining_terms, element_terms, number_conserving_terms,
    terms_from_m, Term,
};
