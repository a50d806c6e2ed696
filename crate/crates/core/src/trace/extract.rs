//! Recovering per-irrep traces from the generating function.
//!
//! The weighted trace is a (Taylor or Laurent) series in the projector
//! variables whose coefficients are exactly the per-irrep traces — or, for
//! the two-variable family, sector traces from which neighbouring irreps
//! are separated by a single subtraction.  Contour quadrature on circles
//! inside the series' domain recovers a whole block of coefficients from
//! the same samples; every sample's convergence verdict is checked, and a
//! single failing sample voids the block.

use super::generating::{generating_trace_cached, HomotopyCache};
use super::spectral::spectral_data;
use crate::algebra::{AlgebraElement, Group, ProjectorFamily};
use crate::numerics::{contour_coefficients, contour_coefficients_2d};
use crate::types::{ConvergenceStatus, IrrepLabel, C64};
use crate::{Error, Result};
use std::cell::RefCell;
use std::collections::BTreeMap;

/// A block of generating-series coefficients with its convergence verdict.
#[derive(Debug, Clone)]
pub struct Extraction {
    pub group: Group,
    /// Exponent vector (one entry per projector variable) → coefficient.
    /// Empty when `status` carries no value.
    pub coefficients: BTreeMap<Vec<i64>, C64>,
    /// Worst verdict over every contour sample.
    pub status: ConvergenceStatus,
    pub radii: Vec<f64>,
    pub detail: Option<String>,
}

impl Extraction {
    /// Assemble the trace over `label` from the extracted block.
    pub fn irrep_trace(&self, label: &IrrepLabel) -> Result<C64> {
        if !self.status.has_value() {
            return Err(Error::Divergent(format!(
                "extraction carries no coefficients (status {:?})",
                self.status
            )));
        }
        let family = ProjectorFamily::new(self.group);
        let mut acc = C64::new(0.0, 0.0);
        for (exponents, weight) in family.required_exponents(label)? {
            let c = self.coefficients.get(&exponents).ok_or_else(|| {
                Error::InvalidInput(format!("exponent {exponents:?} outside the extracted range"))
            })?;
            acc += C64::new(weight, 0.0) * c;
        }
        Ok(acc)
    }
}

/// Contour radii adapted to the element's spectrum: half the distance to
/// the nearest series singularity, capped at 0.3, for the Taylor families;
/// the unit circle (always inside the annulus when `|ε| < 1`) for the
/// su(1,1) Laurent family.
pub fn default_radii(x: &AlgebraElement) -> Result<Vec<f64>> {
    match x.group() {
        Group::Su2 => {
            let eps = spectral_data(x)?.designated.expect("rank-1 designation");
            Ok(vec![0.5 * eps.norm().min(0.6)])
        }
        Group::Su3 => {
            let eigs = spectral_data(x)?.eigenvalues;
            let max = eigs.iter().map(|z| z.norm()).fold(0.0, f64::max);
            let min = eigs.iter().map(|z| z.norm()).fold(f64::MAX, f64::min);
            Ok(vec![0.5 * max.recip().min(0.6), 0.5 * min.min(0.6)])
        }
        Group::Su11 => Ok(vec![1.0]),
    }
}

/// Extract the coefficients with exponents in `ranges` (inclusive, one
/// range per projector variable).  Radii default to [`default_radii`].
pub fn extract_coefficients(
    x: &AlgebraElement,
    ranges: &[(i64, i64)],
    radii_override: Option<&[f64]>,
) -> Result<Extraction> {
    let family = ProjectorFamily::new(x.group());
    if ranges.len() != family.num_vars() {
        return Err(Error::InvalidInput(format!(
            "{} extraction needs {} exponent range(s), got {}",
            x.group(),
            family.num_vars(),
            ranges.len()
        )));
    }
    let radii = match radii_override {
        Some(r) => r.to_vec(),
        None => default_radii(x)?,
    };
    if radii.len() != family.num_vars() {
        return Err(Error::InvalidInput(format!(
            "{} extraction needs {} radius value(s), got {}",
            x.group(),
            family.num_vars(),
            radii.len()
        )));
    }

    let cache = HomotopyCache::new(&family, x);
    let worst = RefCell::new(ConvergenceStatus::Convergent);
    let failure: RefCell<Option<(ConvergenceStatus, Option<String>)>> = RefCell::new(None);
    let sample = |t: &[C64]| -> Result<C64> {
        let out = generating_trace_cached(x, t, &family, &cache)?;
        match out.value {
            Some(v) => {
                if out.status == ConvergenceStatus::Marginal {
                    *worst.borrow_mut() = ConvergenceStatus::Marginal;
                }
                Ok(v)
            }
            None => {
                *failure.borrow_mut() = Some((out.status, out.detail));
                Err(Error::Divergent("contour sample carries no value".into()))
            }
        }
    };

    let extracted: Result<BTreeMap<Vec<i64>, C64>> = match family.num_vars() {
        1 => contour_coefficients(|t| sample(&[t]), radii[0], ranges[0])
            .map(|m| m.into_iter().map(|(n, c)| (vec![n], c)).collect()),
        _ => contour_coefficients_2d(
            |t, u| sample(&[t, u]),
            (radii[0], radii[1]),
            ranges[0],
            ranges[1],
        )
        .map(|m| m.into_iter().map(|((p, q), c)| (vec![p, q], c)).collect()),
    };

    match extracted {
        Ok(coefficients) => Ok(Extraction {
            group: x.group(),
            coefficients,
            status: worst.into_inner(),
            radii,
            detail: None,
        }),
        Err(e) => match failure.into_inner() {
            // A sample reported divergence/branch failure: that is the
            // verdict for the whole block, not an input error.
            Some((status, detail)) => Ok(Extraction {
                group: x.group(),
                coefficients: BTreeMap::new(),
                status,
                radii,
                detail,
            }),
            None => Err(e),
        },
    }
}

/// Extract exactly the coefficients needed for `labels` and assemble the
/// per-irrep traces, in input order.
pub fn extract_irrep_traces(
    x: &AlgebraElement,
    labels: &[IrrepLabel],
    radii_override: Option<&[f64]>,
) -> Result<(Vec<(IrrepLabel, C64)>, Extraction)> {
    let family = ProjectorFamily::new(x.group());
    if labels.is_empty() {
        return Err(Error::InvalidInput("no irrep labels requested".into()));
    }
    let vars = family.num_vars();
    let mut lo = vec![i64::MAX; vars];
    let mut hi = vec![i64::MIN; vars];
    for label in labels {
        for (exponents, _) in family.required_exponents(label)? {
            for (axis, &n) in exponents.iter().enumerate() {
                lo[axis] = lo[axis].min(n);
                hi[axis] = hi[axis].max(n);
            }
        }
    }
    let ranges: Vec<(i64, i64)> = lo.into_iter().zip(hi).collect();
    let extraction = extract_coefficients(x, &ranges, radii_override)?;
    if !extraction.status.has_value() {
        return Ok((Vec::new(), extraction));
    }
    let mut values = Vec::with_capacity(labels.len());
    for label in labels {
        values.push((label.clone(), extraction.irrep_trace(label)?));
    }
    Ok((values, extraction))
}
