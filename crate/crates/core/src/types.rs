//! Shared small types: complex alias, convergence statuses, irrep labels.

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Complex double; serialized everywhere as a `[re, im]` pair.
pub type C64 = Complex64;

/// Convergence verdict attached to trace-like outputs.
///
/// `Convergent` and `Marginal` carry a value; `Divergent` and `BranchFailure`
/// do not.  `Marginal` means the positivity test passed but within its
/// tolerance band, so the value sits near the convergence boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ConvergenceStatus {
    Convergent,
    Marginal,
    Divergent,
    BranchFailure,
}

impl ConvergenceStatus {
    /// True when a value accompanies this status.
    pub fn has_value(self) -> bool {
        matches!(self, ConvergenceStatus::Convergent | ConvergenceStatus::Marginal)
    }
}

/// Label of an irreducible subspace.
///
/// * su(2): total weight `2j` (a nonnegative integer),
/// * su(3): Young labels `(p, q)` of the `(p,0) ⊗ (0,q)` block,
/// * su(1,1): Bargmann index `k > 0` and the sign of the conserved mode
///   imbalance `n₁ - n₂ = ±(2k-1)` (`0` for the symmetric `k = 1/2` ladder).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IrrepLabel {
    Su2 { two_j: u32 },
    Su3 { p: u32, q: u32 },
    Su11 { k: f64, sign: i8 },
}

impl std::fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IrrepLabel::Su2 { two_j } => write!(f, "2j={two_j}"),
            IrrepLabel::Su3 { p, q } => write!(f, "(p,q)=({p},{q})"),
            IrrepLabel::Su11 { k, sign } => {
                let s = match sign.cmp(&0) {
                    std::cmp::Ordering::Greater => "+",
                    std::cmp::Ordering::Less => "-",
                    std::cmp::Ordering::Equal => "0",
                };
                write!(f, "k={k},{s}")
            }
        }
    }
}

/// Serialize a complex number as `[re, im]`.
pub fn serialize_c64<S: Serializer>(z: &C64, s: S) -> std::result::Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

/// Deserialize a complex number from `[re, im]`.
pub fn deserialize_c64<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<C64, D::Error> {
    let [re, im] = <[f64; 2]>::deserialize(d)?;
    Ok(C64::new(re, im))
}

/// Serialize an optional complex number as `[re, im]` or `null`.
pub fn serialize_opt_c64<S: Serializer>(
    z: &Option<C64>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    z.map(|z| [z.re, z.im]).serialize(s)
}

/// Deserialize an optional complex number.
pub fn deserialize_opt_c64<'de, D: Deserializer<'de>>(
    d: D,
) -> std::result::Result<Option<C64>, D::Error> {
    Ok(Option::<[f64; 2]>::deserialize(d)?.map(|[re, im]| C64::new(re, im)))
}
