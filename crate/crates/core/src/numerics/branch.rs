//! Square-root branch tracking along a parametrized path.
//!
//! The generating traces involve `det[...]^{-1/2}` where the determinant moves
//! in the complex plane as the algebra element is deformed.  The square root
//! must follow the branch continuously from an anchor where its value is
//! known; picking the principal branch pointwise would introduce spurious sign
//! flips whenever the determinant crosses the negative real axis.

use super::DELTA_BRANCH;
use crate::types::C64;
use crate::{Error, Result};

/// One accepted continuation step.
#[derive(Debug, Clone)]
pub struct BranchSample {
    /// Path parameter in `[0, 1]`.
    pub s: f64,
    /// Tracked function value `f(s)`.
    pub f: C64,
    /// Continuously chosen square root of `f(s)`.
    pub root: C64,
}

/// Record of a square-root continuation.
#[derive(Debug, Clone)]
pub struct BranchPath {
    /// Accepted samples in path order, `s = 0` through `s = 1`.
    pub samples: Vec<BranchSample>,
    /// Steps rejected and halved due to the phase-change guard.
    pub refinements: usize,
    /// Smallest `|f|` seen along the path.
    pub min_abs: f64,
}

/// Largest per-step phase change of `f` accepted without refinement; below
/// `π/2` the nearer square root is unambiguous.
const MAX_PHASE_STEP: f64 = std::f64::consts::FRAC_PI_2 * 0.98;

/// Smallest step before the walk gives up.
const MIN_STEP: f64 = 1e-7;

/// Continue `sqrt(f(s))` from `s = 0` to `s = 1`.
///
/// `reference` is the known square root at `s = 0` (it is re-normalized onto
/// the exact `±sqrt(f(0))` nearer to it, so tiny inconsistencies in the caller
/// do not accumulate).  The step size adapts so the phase of `f` changes by
/// less than `π/2` per accepted step; a path value with `|f| < 1e-12` aborts
/// with [`Error::BranchPoint`].
pub fn sqrt_branch_tracked<F>(mut f: F, reference: C64) -> Result<(C64, BranchPath)>
where
    F: FnMut(f64) -> Result<C64>,
{
    let f0 = f(0.0)?;
    if f0.norm() < DELTA_BRANCH {
        return Err(Error::BranchPoint { s: 0.0, threshold: DELTA_BRANCH });
    }
    let principal = f0.sqrt();
    let root0 = if (principal - reference).norm() <= (-principal - reference).norm() {
        principal
    } else {
        -principal
    };

    let mut path = BranchPath {
        samples: vec![BranchSample { s: 0.0, f: f0, root: root0 }],
        refinements: 0,
        min_abs: f0.norm(),
    };
    let mut s = 0.0f64;
    let mut prev_f = f0;
    let mut prev_root = root0;
    let mut step = 1.0 / 16.0;

    while s < 1.0 {
        let s_next = (s + step).min(1.0);
        let f_next = f(s_next)?;
        if f_next.norm() < DELTA_BRANCH {
            return Err(Error::BranchPoint { s: s_next, threshold: DELTA_BRANCH });
        }
        let ratio = f_next / prev_f;
        let phase = ratio.arg().abs();
        let mag = ratio.norm();
        if phase > MAX_PHASE_STEP || !(0.1..=10.0).contains(&mag) {
            step *= 0.5;
            path.refinements += 1;
            if step < MIN_STEP {
                // Unresolvably fast winding: treat as a branch ambiguity.
                return Err(Error::BranchPoint { s: s_next, threshold: DELTA_BRANCH });
            }
            continue;
        }
        let p = f_next.sqrt();
        let root = if (p - prev_root).norm() <= (-p - prev_root).norm() { p } else { -p };
        path.min_abs = path.min_abs.min(f_next.norm());
        path.samples.push(BranchSample { s: s_next, f: f_next, root });
        s = s_next;
        prev_f = f_next;
        prev_root = root;
        if phase < MAX_PHASE_STEP * 0.25 {
            step = (step * 2.0).min(1.0 / 8.0);
        }
    }
    Ok((prev_root, path))
}
