//! Generator tables, algebra elements and weight projector families.

mod constants;
mod element;
mod projector;
mod spec;

pub use constants::{block_diag, gell_mann, omega, pauli, tau};
pub use element::{algebra, element_from_fundamental, expand_in_fundamental, AlgebraElement};
pub use projector::{su11_exponent, ProjectorFamily};
pub use spec::{build_algebra, AlgebraSpec, Group};
