//! Weight projector families `P̂(t)`.
//!
//! Each group gets a central weight operator whose formal power series in `t`
//! separates irreducible subspaces:
//!
//! * su(2): `t^{n̂₁+n̂₂}` — the spin-j irrep sits at exponent `2j`,
//! * su(3): `t^{N̂_a} t'^{N̂_b}` — sector `(p, q)` is `Sym^p(3) ⊗ Sym^q(3̄)`,
//!   whose trace splits as irrep `(p,q)` plus the `(p-1, q-1)` sector,
//! * su(1,1): `t^{n̂₁-n̂₂}` — a Laurent family; exponent `n` carries the
//!   discrete-series irrep `k = (|n|+1)/2` with the sign of `n` choosing the
//!   ladder built on mode 1 or mode 2.
//!
//! Because the weight exponential is itself `e^{bilinear}` up to the constant
//! `tr(ρ_P)/2`, the determinant trace formula applies with the scalar
//! prefactor `f(t)` recorded here, and `e^{2τM_P}` is diagonal in closed form.

use super::element::AlgebraElement;
use super::spec::Group;
use crate::types::{C64, IrrepLabel};
use crate::{Error, Result};
use ndarray::Array2;

/// Euler-weight anchor offset for the su(1,1) family: the generating trace
/// diverges at `x = 0`, so paths start from `x₀ = -2K₃` instead.
const SU11_ANCHOR_BETA: f64 = 1.0;

#[derive(Debug, Clone, Copy)]
pub struct ProjectorFamily {
    pub group: Group,
}

impl ProjectorFamily {
    pub fn new(group: Group) -> Self {
        ProjectorFamily { group }
    }

    /// Number of formal variables (`t` or `t, t'`).
    pub fn num_vars(&self) -> usize {
        match self.group {
            Group::Su3 => 2,
            _ => 1,
        }
    }

    /// Whether the family is a Laurent series (negative exponents occur).
    pub fn is_laurent(&self) -> bool {
        self.group == Group::Su11
    }

    fn check_vars(&self, t: &[C64]) -> Result<()> {
        if t.len() != self.num_vars() {
            return Err(Error::InvalidInput(format!(
                "{} projector family takes {} variable(s), got {}",
                self.group,
                self.num_vars(),
                t.len()
            )));
        }
        if t.iter().any(|z| z.norm() < 1e-14) {
            return Err(Error::InvalidInput("projector variable too close to zero".into()));
        }
        Ok(())
    }

    /// The diagonal matrix `e^{2τ M_P(t)}` of the weight exponential.
    pub fn exp_2tau_p(&self, t: &[C64]) -> Result<Array2<C64>> {
        self.check_vars(t)?;
        let diag: Vec<C64> = match self.group {
            Group::Su2 => {
                let (t0, i0) = (t[0], t[0].inv());
                vec![t0, t0, i0, i0]
            }
            Group::Su3 => {
                let (t0, t1) = (t[0], t[1]);
                let (i0, i1) = (t0.inv(), t1.inv());
                vec![t0, t0, t0, t1, t1, t1, i0, i0, i0, i1, i1, i1]
            }
            Group::Su11 => {
                let (t0, i0) = (t[0], t[0].inv());
                vec![t0, i0, i0, t0]
            }
        };
        Ok(Array2::from_diag(&ndarray::Array1::from(diag)))
    }

    /// Scalar prefactor `f(t)` relating the weight operator to the pure
    /// bilinear exponential: `P̂(t) = f(t) · e^{x̂_P}` with `f = e^{-tr ρ_P / 2}`.
    pub fn prefactor(&self, t: &[C64]) -> Result<C64> {
        self.check_vars(t)?;
        Ok(match self.group {
            Group::Su2 => t[0].inv(),
            // (t t')^{-3/2}, principal logs; any branch slip cancels against
            // the anchored reference root downstream.
            Group::Su3 => (-1.5 * (t[0].ln() + t[1].ln())).exp(),
            Group::Su11 => C64::new(1.0, 0.0),
        })
    }

    /// Start of homotopy paths: the zero element where the generating trace
    /// converges at `x = 0`, or `-2K₃` for the su(1,1) family.
    pub fn anchor_element(&self) -> AlgebraElement {
        match self.group {
            Group::Su2 | Group::Su3 => AlgebraElement::zero(self.group),
            Group::Su11 => {
                AlgebraElement::from_named(Group::Su11, &[("K3", C64::new(-2.0 * SU11_ANCHOR_BETA, 0.0))])
                    .expect("static element")
            }
        }
    }

    /// Closed-form generating trace at the anchor element.
    pub fn anchor_value(&self, t: &[C64]) -> Result<C64> {
        self.check_vars(t)?;
        let one = C64::new(1.0, 0.0);
        match self.group {
            Group::Su2 => {
                let d = one - t[0];
                if d.norm() < 1e-12 {
                    return Err(Error::SpectralPoint);
                }
                Ok((d * d).inv())
            }
            Group::Su3 => {
                let (d0, d1) = (one - t[0], one - t[1]);
                if d0.norm() < 1e-12 || d1.norm() < 1e-12 {
                    return Err(Error::SpectralPoint);
                }
                Ok((d0 * d0 * d0 * d1 * d1 * d1).inv())
            }
            Group::Su11 => {
                let eps = C64::new((-SU11_ANCHOR_BETA).exp(), 0.0);
                let (d0, d1) = (t[0] - eps, t[0] - eps.inv());
                if d0.norm() < 1e-12 || d1.norm() < 1e-12 {
                    return Err(Error::SpectralPoint);
                }
                Ok(-t[0] / (d0 * d1))
            }
        }
    }

    /// Which series coefficients build the trace over `label`, as
    /// `(exponent-vector, ±1)` pairs.
    pub fn required_exponents(&self, label: &IrrepLabel) -> Result<Vec<(Vec<i64>, f64)>> {
        match (self.group, label) {
            (Group::Su2, IrrepLabel::Su2 { two_j }) => Ok(vec![(vec![*two_j as i64], 1.0)]),
            (Group::Su3, IrrepLabel::Su3 { p, q }) => {
                let mut parts = vec![(vec![*p as i64, *q as i64], 1.0)];
                if *p > 0 && *q > 0 {
                    parts.push((vec![*p as i64 - 1, *q as i64 - 1], -1.0));
                }
                Ok(parts)
            }
            (Group::Su11, IrrepLabel::Su11 { k, sign }) => {
                let n = su11_exponent(*k, *sign)?;
                Ok(vec![(vec![n], 1.0)])
            }
            (g, l) => Err(Error::InvalidInput(format!("label {l} does not belong to {g}"))),
        }
    }

    /// Inverse of the exponent → label map.
    pub fn label_for_exponent(&self, n: &[i64]) -> Result<IrrepLabel> {
        match self.group {
            Group::Su2 => {
                let v = single(n)?;
                if v < 0 {
                    return Err(Error::InvalidInput("su2 exponents are nonnegative".into()));
                }
                Ok(IrrepLabel::Su2 { two_j: v as u32 })
            }
            Group::Su3 => {
                if n.len() != 2 || n[0] < 0 || n[1] < 0 {
                    return Err(Error::InvalidInput(
                        "su3 exponents are pairs of nonnegative integers".into(),
                    ));
                }
                Ok(IrrepLabel::Su3 { p: n[0] as u32, q: n[1] as u32 })
            }
            Group::Su11 => {
                let v = single(n)?;
                Ok(IrrepLabel::Su11 {
                    k: (v.unsigned_abs() as f64 + 1.0) / 2.0,
                    sign: v.signum() as i8,
                })
            }
        }
    }
}

fn single(n: &[i64]) -> Result<i64> {
    if n.len() != 1 {
        return Err(Error::InvalidInput("expected a single exponent".into()));
    }
    Ok(n[0])
}

/// Validate an su(1,1) discrete-series label and return its weight exponent
/// `±(2k-1)`; `sign = 0` is the self-paired `k = 1/2` ladder.
pub fn su11_exponent(k: f64, sign: i8) -> Result<i64> {
    let two_k = 2.0 * k;
    if (two_k - two_k.round()).abs() > 1e-9 || k < 0.5 - 1e-12 {
        return Err(Error::InvalidInput(format!(
            "su11 label k = {k} must be a positive half-integer (k ≥ 1/2)"
        )));
    }
    let d = (two_k.round() as i64) - 1; // 2k - 1 ≥ 0
    match (d, sign) {
        (0, 0) => Ok(0),
        (0, _) => Err(Error::InvalidInput("k = 1/2 has a single ladder; use sign 0".into())),
        (_, 1) => Ok(d),
        (_, -1) => Ok(-d),
        _ => Err(Error::InvalidInput(format!(
            "k = {k} needs sign ±1 to pick a ladder, got {sign}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::element::algebra;

    fn cx(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn su2_anchor_matches_brute_force_sum() {
        let fam = ProjectorFamily::new(Group::Su2);
        let t = cx(0.3, 0.1);
        let mut sum = cx(0.0, 0.0);
        for n1 in 0..200 {
            for n2 in 0..200 {
                sum += t.powi(n1 + n2);
            }
        }
        let anchor = fam.anchor_value(&[t]).unwrap();
        assert!((sum - anchor).norm() < 1e-10);
    }

    #[test]
    fn su11_anchor_matches_brute_force_sum() {
        let fam = ProjectorFamily::new(Group::Su11);
        let t = cx(0.8, -0.2);
        // Tr[t^{n₁-n₂} e^{-(n₁+n₂+1)}]
        let mut sum = cx(0.0, 0.0);
        for n1 in 0..80 {
            for n2 in 0..80 {
                sum += t.powi(n1 - n2) * cx((-(n1 + n2) as f64 - 1.0).exp(), 0.0);
            }
        }
        let anchor = fam.anchor_value(&[t]).unwrap();
        assert!((sum - anchor).norm() < 1e-10, "sum {sum} anchor {anchor}");
    }

    #[test]
    fn weight_matrix_is_central() {
        // e^{2τP} commutes with every S(gᵢ): the weight operator must be
        // central or the determinant identity breaks.
        for group in [Group::Su2, Group::Su3, Group::Su11] {
            let fam = ProjectorFamily::new(group);
            let t: Vec<C64> = (0..fam.num_vars()).map(|k| cx(0.4 + 0.1 * k as f64, 0.2)).collect();
            let d = fam.exp_2tau_p(&t).unwrap();
            let alg = algebra(group);
            for i in 0..group.dim() {
                let s = alg.s_table(i);
                let comm = d.dot(&s) - s.dot(&d);
                let dev = comm.iter().map(|z| z.norm()).fold(0.0, f64::max);
                assert!(dev < 1e-13, "{group} generator {i} fails centrality: {dev:.2e}");
            }
        }
    }

    #[test]
    fn anchor_consistent_with_determinant_formula() {
        // T(t)² = f(t)² / ((-1)^r det[e^{2τP} e^{2τM(anchor)} - 1]) must equal
        // anchor_value², fixing everything except the root choice.
        for group in [Group::Su2, Group::Su3, Group::Su11] {
            let fam = ProjectorFamily::new(group);
            let t: Vec<C64> = (0..fam.num_vars()).map(|k| cx(0.35 + 0.05 * k as f64, 0.1)).collect();
            let r = group.modes();
            let exp_p = fam.exp_2tau_p(&t).unwrap();
            let exp_m = crate::numerics::mat_exp(&fam.anchor_element().s_matrix()).unwrap();
            let prod = exp_p.dot(&exp_m) - Array2::<C64>::eye(2 * r);
            let det = crate::numerics::determinant(&prod).unwrap();
            let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
            let f = fam.prefactor(&t).unwrap();
            let lhs = f * f / (det * cx(sign, 0.0));
            let anchor = fam.anchor_value(&t).unwrap();
            let rel = (lhs - anchor * anchor).norm() / (anchor * anchor).norm();
            assert!(rel < 1e-10, "{group}: squared identity off by {rel:.2e}");
        }
    }

    #[test]
    fn label_maps_round_trip() {
        let fam = ProjectorFamily::new(Group::Su11);
        for n in [-5i64, -1, 0, 1, 4] {
            let label = fam.label_for_exponent(&[n]).unwrap();
            let back = fam.required_exponents(&label).unwrap();
            assert_eq!(back, vec![(vec![n], 1.0)]);
        }
        let fam3 = ProjectorFamily::new(Group::Su3);
        let parts = fam3
            .required_exponents(&IrrepLabel::Su3 { p: 2, q: 1 })
            .unwrap();
        assert_eq!(parts, vec![(vec![2, 1], 1.0), (vec![1, 0], -1.0)]);
        assert!(su11_exponent(0.7, 1).is_err());
        assert!(su11_exponent(1.0, 0).is_err());
    }
}
