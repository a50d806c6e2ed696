//! Irrep traces, generating-function evaluation, and coefficient extraction.
//!
//! The pipeline has three levels:
//!
//! 1. [`spectral_data`] reduces a group element to the spectrum of its
//!    defining-representation matrix (plus a designated eigenvalue used by
//!    the closed-form character formulas).
//! 2. [`irrep_trace`] evaluates a single irreducible trace from that
//!    spectrum via Weyl-character closed forms.
//! 3. [`generating_trace`] evaluates the full weighted generating function
//!    (a Gaussian determinant with branch tracking), whose series
//!    coefficients reproduce the individual irrep traces.

mod characters;
mod conjugation;
mod extract;
mod generating;
mod spectral;

pub use characters::{
    irrep_trace, irrep_trace_from_spectrum, su11_ladder_closed_form, su2_character, su3_character,
    su3_dimension,
};
pub use conjugation::{conjugated_element, conjugation_invariance_check, ConjugationReport};
pub use extract::{default_radii, extract_coefficients, extract_irrep_traces, Extraction};
pub use generating::{generating_trace, generating_trace_cached, HomotopyCache, TraceOutcome};
pub use spectral::{designated_of_matrix, is_strongly_hyperbolic, spectral_data, SpectralData};
