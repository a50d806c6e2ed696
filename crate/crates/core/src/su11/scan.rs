//! Complex-parameter scans for zeros and poles of ladder-trace observables.
//!
//! The partition function `Z(β) = ε(β)^{2k}/(1-ε(β)²)` and the quench
//! characteristic function `χ(u)` extend to complex `β` (or `u`), where their
//! zeros and poles organize the analytic structure (dynamical phase
//! transitions live where a zero pinches the real axis).  The scanner walks a
//! rectangular grid and continues the logarithm of the tracked eigenvalue
//! from cell to cell, anchored on the physical Gibbs branch.  Two naive
//! alternatives fail: picking the contracting eigenvalue pointwise is
//! discontinuous across the unit circle, and pairing raw eigenvalues by
//! distance breaks exactly at the poles being hunted (`ε = ±1` is where the
//! two eigenvalues `ε, 1/ε` collide) — the unwrapped logs `±w` stay separated
//! there.  The scanner then counts the phase winding of the observable around
//! every plaquette and bisects any plaquette with nonzero winding down to a
//! 1e-6 cell.
//!
//! Phase unwrapping needs neighboring cells to stay within half a turn of
//! each other: keep the grid spacing below `π/|μ|`, where `±μ` are the
//! eigenvalues of the scanned Hamiltonian's fundamental matrix.
//!
//! Every grid cell individually carries a status; divergent cells (where the
//! underlying ladder sum would not converge) still report the analytically
//! continued value, and only genuine singularities (`ε² = 1`, or a failed
//! matrix evaluation) withhold one.

use std::f64::consts::PI;

use ndarray::Array2;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::algebra::AlgebraElement;
use crate::numerics::{eigenvalues, mat_exp};
use crate::trace::su11_ladder_closed_form;
use crate::types::C64;
use crate::{Error, Result};

/// Rectangular grid in the complex plane, endpoints inclusive, row-major
/// (imaginary part varies slowest).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanGrid {
    pub re: (f64, f64),
    pub im: (f64, f64),
    pub nx: usize,
    pub ny: usize,
}

impl ScanGrid {
    pub fn validate(&self) -> Result<()> {
        let bounds = [self.re.0, self.re.1, self.im.0, self.im.1];
        if bounds.iter().any(|b| !b.is_finite()) {
            return Err(Error::InvalidInput(format!("grid bounds must be finite: {bounds:?}")));
        }
        if self.re.1 <= self.re.0 || self.im.1 <= self.im.0 {
            return Err(Error::InvalidInput(
                "grid bounds must satisfy re.0 < re.1 and im.0 < im.1".into(),
            ));
        }
        if self.nx < 2 || self.ny < 2 {
            return Err(Error::InvalidInput(format!(
                "grid needs at least 2 points per axis, got {}×{}",
                self.nx, self.ny
            )));
        }
        Ok(())
    }

    fn point(&self, ix: usize, iy: usize) -> C64 {
        C64::new(
            self.re.0 + (self.re.1 - self.re.0) * ix as f64 / (self.nx - 1) as f64,
            self.im.0 + (self.im.1 - self.im.0) * iy as f64 / (self.ny - 1) as f64,
        )
    }
}

/// What to evaluate at each grid point `z`.
pub enum ScanFunction {
    /// `Z(z) = Tr_{2k} e^{-zH}` over complex inverse temperature.
    Partition { k: f64, hamiltonian: AlgebraElement },
    /// `χ(z) = Tr[e^{izH_f} e^{-izH_i} e^{-βH_i}] / Tr[e^{-βH_i}]` over
    /// complex `u = z`.
    WorkCharacteristic { k: f64, h_i: AlgebraElement, h_f: AlgebraElement, beta: f64 },
}

/// Convergence classification of one grid cell.  `Divergent` cells still
/// carry the analytically continued value; `Singular` cells carry none.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CellStatus {
    Value,
    Divergent,
    Singular,
}

impl CellStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CellStatus::Value => "value",
            CellStatus::Divergent => "divergent",
            CellStatus::Singular => "singular",
        }
    }
}

/// One evaluated grid point.
#[derive(Debug, Clone)]
pub struct ScanPoint {
    pub z: C64,
    pub status: CellStatus,
    pub value: Option<C64>,
    /// Continued logarithm of the tracked eigenvalue (present whenever the
    /// matrix evaluation succeeded, even on singular cells).
    pub log_eps: Option<C64>,
}

/// A plaquette whose phase winding is nonzero: a zero (`winding > 0`) or
/// pole (`winding < 0`) of the scanned observable.
#[derive(Debug, Clone)]
pub struct ScanCandidate {
    pub location: C64,
    pub winding: i64,
    /// Side length of the final bracketing cell.
    pub cell_size: f64,
    /// Whether bisection reached the 1e-6 target (false when the winding was
    /// lost while descending, e.g. near a branch point of the eigenvalue).
    pub refined: bool,
}

impl ScanCandidate {
    pub fn kind(&self) -> &'static str {
        if self.winding > 0 {
            "zero"
        } else {
            "pole"
        }
    }
}

/// Full scan result: points row-major, plaquette windings anchored at each
/// plaquette's lower-left point (zero on the last row/column and wherever a
/// corner is singular), and the refined candidates.
pub struct ScanReport {
    pub grid: ScanGrid,
    pub points: Vec<ScanPoint>,
    pub windings: Vec<i64>,
    pub candidates: Vec<ScanCandidate>,
}

const REFINEMENT_TARGET: f64 = 1e-6;
const SINGULAR_POLE_TOL: f64 = 1e-12;

struct Evaluator {
    function: ScanFunction,
    /// Precomputed thermal factor for the quench scan.
    gibbs: Option<Array2<C64>>,
    /// Fixed normalization (the quench scan divides by `Tr e^{-βH_i}`).
    denominator: C64,
    /// Positive eigenvalue of `ρ(H)` for partition scans: the physical
    /// branch is exactly `log ε(z) = -zμ`.
    mu: Option<C64>,
    /// Physical branch log at `u = 0` for quench scans (the Gibbs anchor).
    origin_log: Option<C64>,
}

struct PointEval {
    status: CellStatus,
    value: Option<C64>,
    log_eps: Option<C64>,
}

impl Evaluator {
    fn new(function: ScanFunction) -> Result<Self> {
        let check_k = |k: f64| -> Result<()> {
            if !(k > 0.0) {
                return Err(Error::InvalidInput(format!(
                    "ladder index k must be positive, got {k}"
                )));
            }
            Ok(())
        };
        match &function {
            ScanFunction::Partition { k, hamiltonian } => {
                super::thermal::check_hamiltonian("the Hamiltonian", hamiltonian)?;
                check_k(*k)?;
                // the Hamiltonian must open a Gibbs region somewhere on the
                // real axis: ρ(H) hyperbolic with eigenvalues ±μ, μ > 0
                let mu = eigenvalues(&hamiltonian.fundamental_matrix())?
                    .into_iter()
                    .max_by(|a, b| a.re.total_cmp(&b.re))
                    .expect("2x2 spectrum");
                if mu.re <= 1e-12 || mu.im.abs() > 1e-10 * mu.re.max(1.0) {
                    return Err(Error::InvalidInput(format!(
                        "the Hamiltonian is not bounded below with a gapped positive \
                         spectrum (ρ(H) eigenvalue {mu}); no Gibbs region to anchor the scan"
                    )));
                }
                Ok(Evaluator {
                    function,
                    gibbs: None,
                    denominator: C64::new(1.0, 0.0),
                    mu: Some(mu),
                    origin_log: None,
                })
            }
            ScanFunction::WorkCharacteristic { k, h_i, h_f, beta } => {
                super::thermal::check_hamiltonian("the initial Hamiltonian", h_i)?;
                super::thermal::check_hamiltonian("the final Hamiltonian", h_f)?;
                check_k(*k)?;
                if !(beta > &0.0) || !beta.is_finite() {
                    return Err(Error::InvalidInput(format!(
                        "inverse temperature must be positive and finite, got {beta}"
                    )));
                }
                let gibbs = mat_exp(&h_i.scale(C64::new(-beta, 0.0)).fundamental_matrix())?;
                let eps_i = designated(&eigenvalues(&gibbs)?);
                let denominator = su11_ladder_closed_form(eps_i, *k)?;
                Ok(Evaluator {
                    function,
                    gibbs: Some(gibbs),
                    denominator,
                    mu: None,
                    origin_log: Some(eps_i.ln()),
                })
            }
        }
    }

    /// Physical-branch log at the scan's starting point.  Partition scans
    /// have it in closed form; quench scans continue it from the Gibbs
    /// anchor at `u = 0` along a straight path.
    fn seed(&self, z0: C64) -> C64 {
        match &self.function {
            ScanFunction::Partition { .. } => -z0 * self.mu.expect("set for partition scans"),
            ScanFunction::WorkCharacteristic { .. } => {
                let mut reference = self.origin_log.expect("set for quench scans");
                let steps = (20.0 * z0.norm()).ceil() as usize + 1;
                for j in 1..=steps {
                    let z = z0 * (j as f64 / steps as f64);
                    if let Some(w) = self.eval(z, reference).log_eps {
                        reference = w;
                    }
                }
                reference
            }
        }
    }

    fn k(&self) -> f64 {
        match &self.function {
            ScanFunction::Partition { k, .. } => *k,
            ScanFunction::WorkCharacteristic { k, .. } => *k,
        }
    }

    fn matrix_at(&self, z: C64) -> Result<Array2<C64>> {
        match &self.function {
            ScanFunction::Partition { hamiltonian, .. } => {
                mat_exp(&hamiltonian.scale(-z).fundamental_matrix())
            }
            ScanFunction::WorkCharacteristic { h_i, h_f, .. } => {
                let i = C64::new(0.0, 1.0);
                let forward = mat_exp(&h_f.scale(i * z).fundamental_matrix())?;
                let backward = mat_exp(&h_i.scale(-i * z).fundamental_matrix())?;
                Ok(forward.dot(&backward).dot(self.gibbs.as_ref().expect("precomputed")))
            }
        }
    }

    /// Evaluate one point, continuing the eigenvalue logarithm from
    /// `reference`.  Pairing happens in log space: at a pole the two
    /// eigenvalues `e^{±w}` collide (`ε = ±1`) while the logs `±w` stay
    /// apart, so the tracked branch survives passing near one.
    fn eval(&self, z: C64, reference: C64) -> PointEval {
        let failed = PointEval { status: CellStatus::Singular, value: None, log_eps: None };
        let Ok(matrix) = self.matrix_at(z) else { return failed };
        if matrix.iter().any(|e| !e.re.is_finite() || !e.im.is_finite()) {
            return failed;
        }
        let Ok(roots) = eigenvalues(&matrix) else { return failed };
        let mut best: Option<(C64, C64)> = None;
        for &root in &roots {
            let mut w = root.ln();
            w.im += 2.0 * PI * ((reference.im - w.im) / (2.0 * PI)).round();
            if !w.re.is_finite() || !w.im.is_finite() {
                continue;
            }
            let closer = match best {
                Some((_, bw)) => (w - reference).norm() < (bw - reference).norm(),
                None => true,
            };
            if closer {
                best = Some((root, w));
            }
        }
        let Some((eps, w)) = best else { return failed };
        let one_minus = C64::new(1.0, 0.0) - eps * eps;
        if one_minus.norm() < SINGULAR_POLE_TOL * eps.norm_sqr().max(1.0) {
            return PointEval { status: CellStatus::Singular, value: None, log_eps: Some(w) };
        }
        let value = (w * 2.0 * self.k()).exp() / one_minus / self.denominator;
        if !value.re.is_finite() || !value.im.is_finite() {
            return PointEval { status: CellStatus::Singular, value: None, log_eps: Some(w) };
        }
        let status =
            if eps.norm() < 1.0 { CellStatus::Value } else { CellStatus::Divergent };
        PointEval { status, value: Some(value), log_eps: Some(w) }
    }
}

/// Contracting eigenvalue (ties pick the upper half plane).
fn designated(roots: &[C64]) -> C64 {
    let (a, b) = (roots[0], roots[1]);
    let (na, nb) = (a.norm(), b.norm());
    if (na - nb).abs() < 1e-12 {
        if a.im >= b.im {
            a
        } else {
            b
        }
    } else if na < nb {
        a
    } else {
        b
    }
}

/// Net phase winding of four corner values (lower-left, lower-right,
/// upper-right, upper-left); `None` when a corner value is unusable.
fn plaquette_winding(corners: [Option<C64>; 4]) -> Option<i64> {
    let mut values = [C64::new(0.0, 0.0); 4];
    for (slot, corner) in values.iter_mut().zip(corners) {
        let v = corner?;
        if v.norm() == 0.0 || !v.re.is_finite() || !v.im.is_finite() {
            return None;
        }
        *slot = v;
    }
    let mut total = 0.0;
    for i in 0..4 {
        total += (values[(i + 1) % 4] / values[i]).arg();
    }
    Some((total / (2.0 * PI)).round() as i64)
}

/// Division fractions tried per refinement level.  Halving goes first; the
/// off-center retries recover the adversarial case where the singularity
/// sits exactly on a division line (e.g. dead center of the starting
/// plaquette), which voids every sub-winding.
const DIVISION_FRACTIONS: [f64; 3] = [0.5, 0.38, 0.62];

/// Bisect a winding-carrying rectangle down to [`REFINEMENT_TARGET`].
///
/// `corner_logs` holds the tracked logs at the rectangle's four corners
/// (lower-left, lower-right, upper-right, upper-left).  The log field is
/// analytic across the value's singularity, so bilinear interpolation of the
/// corners gives every interior evaluation an unambiguous branch reference —
/// a chained reference would have to step past the singularity and can land
/// equidistant from both branches.
fn refine(
    eval: &Evaluator,
    mut x0: f64,
    mut y0: f64,
    mut dx: f64,
    mut dy: f64,
    target: i64,
    mut corner_logs: [C64; 4],
) -> (C64, f64, bool) {
    fn interp(x: f64, y: f64, x0: f64, y0: f64, dx: f64, dy: f64, c: &[C64; 4]) -> C64 {
        let (s, t) = ((x - x0) / dx, (y - y0) / dy);
        c[0] * ((1.0 - s) * (1.0 - t))
            + c[1] * (s * (1.0 - t))
            + c[2] * (s * t)
            + c[3] * ((1.0 - s) * t)
    }
    let (dx0, dy0) = (dx, dy);
    let mut rounds = 0usize;
    while dx.max(dy) > REFINEMENT_TARGET {
        rounds += 1;
        if rounds > 200 {
            return (C64::new(x0 + dx / 2.0, y0 + dy / 2.0), dx.max(dy), false);
        }
        let mut descended = false;
        for fraction in DIVISION_FRACTIONS {
            let xs = [x0, x0 + fraction * dx, x0 + dx];
            let ys = [y0, y0 + fraction * dy, y0 + dy];
            let mut corner_values = [[None; 3]; 3];
            let mut corner_w: [[Option<C64>; 3]; 3] = [[None; 3]; 3];
            for jy in 0..3 {
                for jx in 0..3 {
                    let reference =
                        interp(xs[jx], ys[jy], x0, y0, dx, dy, &corner_logs);
                    let p = eval.eval(C64::new(xs[jx], ys[jy]), reference);
                    corner_w[jy][jx] = p.log_eps;
                    corner_values[jy][jx] = p.value;
                }
            }
            let mut chosen: Option<(usize, usize, i64)> = None;
            for sy in 0..2 {
                for sx in 0..2 {
                    let w = plaquette_winding([
                        corner_values[sy][sx],
                        corner_values[sy][sx + 1],
                        corner_values[sy + 1][sx + 1],
                        corner_values[sy + 1][sx],
                    ]);
                    if let Some(w) = w {
                        if w != 0 && w.signum() == target.signum() {
                            let better = match chosen {
                                Some((_, _, best)) => w.abs() > best.abs(),
                                None => true,
                            };
                            if better {
                                chosen = Some((sx, sy, w));
                            }
                        }
                    }
                }
            }
            if let Some((sx, sy, _)) = chosen {
                let fallback = |jx: usize, jy: usize| {
                    corner_w[jy][jx]
                        .unwrap_or_else(|| interp(xs[jx], ys[jy], x0, y0, dx, dy, &corner_logs))
                };
                corner_logs = [
                    fallback(sx, sy),
                    fallback(sx + 1, sy),
                    fallback(sx + 1, sy + 1),
                    fallback(sx, sy + 1),
                ];
                x0 = xs[sx];
                y0 = ys[sy];
                dx = xs[sx + 1] - xs[sx];
                dy = ys[sy + 1] - ys[sy];
                descended = true;
                break;
            }
        }
        if !descended {
            // No subrectangle carries the winding at any division fraction:
            // an earlier cut ran through the singularity and left it on this
            // rectangle's boundary.  Re-capture it by growing the rectangle
            // about its center (never beyond the original plaquette); if the
            // winding stays lost even at full size, it is genuinely gone
            // (branch point, or noise at the resolution floor).
            if dx >= dx0 && dy >= dy0 {
                return (C64::new(x0 + dx / 2.0, y0 + dy / 2.0), dx.max(dy), false);
            }
            let (cx, cy) = (x0 + dx / 2.0, y0 + dy / 2.0);
            let (ndx, ndy) = ((1.5 * dx).min(dx0), (1.5 * dy).min(dy0));
            let (nx0, ny0) = (cx - ndx / 2.0, cy - ndy / 2.0);
            let corners = [
                (nx0, ny0),
                (nx0 + ndx, ny0),
                (nx0 + ndx, ny0 + ndy),
                (nx0, ny0 + ndy),
            ];
            corner_logs = corners.map(|(x, y)| {
                // bilinear extrapolation of the analytic log field stays a
                // valid branch reference just outside the old rectangle
                let reference = interp(x, y, x0, y0, dx, dy, &corner_logs);
                eval.eval(C64::new(x, y), reference).log_eps.unwrap_or(reference)
            });
            x0 = nx0;
            y0 = ny0;
            dx = ndx;
            dy = ndy;
        }
    }
    (C64::new(x0 + dx / 2.0, y0 + dy / 2.0), dx.max(dy), true)
}

/// Scan the grid, classify every cell, and locate zero/pole candidates by
/// plaquette winding.  Errors only on invalid configuration; numerical
/// trouble at individual points is carried in the cell statuses.
pub fn scan_zeros(function: ScanFunction, grid: &ScanGrid) -> Result<ScanReport> {
    grid.validate()?;
    let eval = Evaluator::new(function)?;
    let (nx, ny) = (grid.nx, grid.ny);

    let mut points: Vec<ScanPoint> = Vec::with_capacity(nx * ny);
    let mut last_w = eval.seed(grid.point(0, 0));
    for iy in 0..ny {
        for ix in 0..nx {
            let z = grid.point(ix, iy);
            // Predict the log by linear extrapolation along the sweep
            // direction when two predecessors exist: a lone neighbor sits
            // exactly equidistant from the two branches whenever the step
            // straddles an eigenvalue collision symmetrically, and the
            // extrapolated trend breaks that tie toward the analytic
            // continuation.
            let w_at = |jx: usize, jy: usize| points[jy * nx + jx].log_eps;
            let extrapolate = |near: Option<C64>, far: Option<C64>| {
                let n = near?;
                Some(far.map_or(n, |f| 2.0 * n - f))
            };
            let reference = (ix > 0)
                .then(|| {
                    extrapolate(w_at(ix - 1, iy), (ix > 1).then(|| w_at(ix - 2, iy)).flatten())
                })
                .flatten()
                .or_else(|| {
                    (iy > 0)
                        .then(|| {
                            extrapolate(
                                w_at(ix, iy - 1),
                                (iy > 1).then(|| w_at(ix, iy - 2)).flatten(),
                            )
                        })
                        .flatten()
                })
                .unwrap_or(last_w);
            let p = eval.eval(z, reference);
            if let Some(w) = p.log_eps {
                last_w = w;
            }
            points.push(ScanPoint { z, status: p.status, value: p.value, log_eps: p.log_eps });
        }
    }

    let mut windings = vec![0i64; nx * ny];
    let mut candidates = Vec::new();
    for iy in 0..ny - 1 {
        for ix in 0..nx - 1 {
            let ll = iy * nx + ix;
            let corners = [
                points[ll].value,
                points[ll + 1].value,
                points[ll + nx + 1].value,
                points[ll + nx].value,
            ];
            let Some(w) = plaquette_winding(corners) else { continue };
            windings[ll] = w;
            if w != 0 {
                let (x0, y0) = (points[ll].z.re, points[ll].z.im);
                let dx = points[ll + 1].z.re - x0;
                let dy = points[ll + nx].z.im - y0;
                let log_of = |idx: usize| {
                    points[idx].log_eps.expect("corner with value has a log")
                };
                let corner_logs =
                    [log_of(ll), log_of(ll + 1), log_of(ll + nx + 1), log_of(ll + nx)];
                let (location, cell_size, refined) =
                    refine(&eval, x0, y0, dx, dy, w, corner_logs);
                candidates.push(ScanCandidate { location, winding: w, cell_size, refined });
            }
        }
    }
    Ok(ScanReport { grid: grid.clone(), points, windings, candidates })
}

impl ScanReport {
    /// Row-major CSV: `re,im,status,value_re,value_im,winding`.  Value fields
    /// are empty on singular cells; the winding column holds the winding of
    /// the plaquette whose lower-left corner is that row's point (zero on the
    /// last row/column).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("re,im,status,value_re,value_im,winding\n");
        for (p, w) in self.points.iter().zip(&self.windings) {
            let (vr, vi) = match p.value {
                Some(v) => (v.re.to_string(), v.im.to_string()),
                None => (String::new(), String::new()),
            };
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                p.z.re,
                p.z.im,
                p.status.as_str(),
                vr,
                vi,
                w
            ));
        }
        out
    }

    /// Deterministic JSON summary: grid, cell-status counts, and candidates.
    pub fn summary_json(&self) -> String {
        let count = |s: CellStatus| self.points.iter().filter(|p| p.status == s).count();
        let candidates: Vec<serde_json::Value> = self
            .candidates
            .iter()
            .map(|c| {
                json!({
                    "re": c.location.re,
                    "im": c.location.im,
                    "winding": c.winding,
                    "kind": c.kind(),
                    "cell_size": c.cell_size,
                    "refined": c.refined,
                })
            })
            .collect();
        let summary = json!({
            "grid": {
                "re": [self.grid.re.0, self.grid.re.1],
                "im": [self.grid.im.0, self.grid.im.1],
                "nx": self.grid.nx,
                "ny": self.grid.ny,
            },
            "counts": {
                "value": count(CellStatus::Value),
                "divergent": count(CellStatus::Divergent),
                "singular": count(CellStatus::Singular),
            },
            "candidates": candidates,
        });
        serde_json::to_string_pretty(&summary).expect("serializable summary")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Group;

    fn cx(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn trap(coeff: f64) -> AlgebraElement {
        AlgebraElement::from_named(Group::Su11, &[("K3", cx(coeff, 0.0))]).unwrap()
    }

    #[test]
    fn real_temperature_strip_is_clean() {
        let h = AlgebraElement::from_named(
            Group::Su11,
            &[("K1", cx(0.5, 0.0)), ("K3", cx(2.0, 0.0))],
        )
        .unwrap();
        let grid = ScanGrid { re: (0.5, 1.5), im: (-0.3, 0.3), nx: 7, ny: 7 };
        let report =
            scan_zeros(ScanFunction::Partition { k: 0.75, hamiltonian: h }, &grid).unwrap();
        assert!(report.candidates.is_empty(), "{:?}", report.candidates);
        assert!(report.points.iter().all(|p| p.status == CellStatus::Value));
        assert!(report.windings.iter().all(|&w| w == 0));
    }

    #[test]
    fn pole_of_the_trap_partition_function_is_located() {
        // H = 2K₃: Z(β) = 1/(2 sinh β), simple poles at β = iπm.  The grid is
        // offset so no point hits iπ or the imaginary axis exactly.
        let grid =
            ScanGrid { re: (-0.35, 0.45), im: (PI - 0.35, PI + 0.45), nx: 9, ny: 9 };
        let report =
            scan_zeros(ScanFunction::Partition { k: 0.5, hamiltonian: trap(2.0) }, &grid)
                .unwrap();

        assert_eq!(report.candidates.len(), 1, "{}", report.summary_json());
        let c = &report.candidates[0];
        assert_eq!(c.winding, -1);
        assert_eq!(c.kind(), "pole");
        assert!(c.refined, "bisection lost the pole at cell size {}", c.cell_size);
        assert!(
            (c.location - cx(0.0, PI)).norm() < 1e-5,
            "pole located at {} (expected iπ)",
            c.location
        );

        // left half of the rectangle diverges (Re β < 0), right half is a
        // convergent Gibbs region; nothing sits exactly on a singularity
        let divergent = report.points.iter().filter(|p| p.status == CellStatus::Divergent);
        let value = report.points.iter().filter(|p| p.status == CellStatus::Value);
        assert_eq!(divergent.count(), 4 * 9);
        assert_eq!(value.count(), 5 * 9);
        assert!(report.points.iter().all(|p| p.status != CellStatus::Singular));
    }

    #[test]
    fn commuting_quench_pole_line_is_located() {
        // H_i = 2K₃ → H_f = 5K₃ at β = 1: ε(u) = e^{(3iu-2)/2}, so χ(u) has
        // poles where 3iu - 2 ∈ 2πiℤ, i.e. u = 2πm/3 - 2i/3.
        let grid = ScanGrid { re: (-0.45, 0.35), im: (-1.02, -0.30), nx: 9, ny: 9 };
        let report = scan_zeros(
            ScanFunction::WorkCharacteristic {
                k: 0.5,
                h_i: trap(2.0),
                h_f: trap(5.0),
                beta: 1.0,
            },
            &grid,
        )
        .unwrap();
        assert_eq!(report.candidates.len(), 1, "{}", report.summary_json());
        let c = &report.candidates[0];
        assert_eq!(c.winding, -1);
        assert!(c.refined);
        assert!(
            (c.location - cx(0.0, -2.0 / 3.0)).norm() < 1e-4,
            "pole located at {} (expected -2i/3)",
            c.location
        );
    }

    #[test]
    fn csv_and_summary_are_well_formed() {
        let grid = ScanGrid { re: (0.4, 1.0), im: (-0.2, 0.2), nx: 4, ny: 3 };
        let report =
            scan_zeros(ScanFunction::Partition { k: 1.0, hamiltonian: trap(2.0) }, &grid)
                .unwrap();
        let csv = report.to_csv();
        let lines: Vec<&str> = csv.trim_end().lines().collect();
        assert_eq!(lines.len(), 1 + 4 * 3);
        assert_eq!(lines[0], "re,im,status,value_re,value_im,winding");
        for line in &lines[1..] {
            assert_eq!(line.split(',').count(), 6, "bad row: {line}");
        }
        let summary: serde_json::Value =
            serde_json::from_str(&report.summary_json()).unwrap();
        assert_eq!(summary["counts"]["value"].as_u64().unwrap(), 12);
        assert_eq!(summary["grid"]["nx"].as_u64().unwrap(), 4);
        assert!(summary["candidates"].as_array().unwrap().is_empty());
        // byte-for-byte determinism
        assert_eq!(report.summary_json(), report.summary_json());
        assert_eq!(report.to_csv(), report.to_csv());
    }

    #[test]
    fn configuration_gates() {
        let bad_grid = ScanGrid { re: (0.0, 1.0), im: (0.0, 1.0), nx: 1, ny: 5 };
        assert!(matches!(
            scan_zeros(
                ScanFunction::Partition { k: 0.5, hamiltonian: trap(2.0) },
                &bad_grid
            ),
            Err(Error::InvalidInput(_))
        ));
        let grid = ScanGrid { re: (0.0, 1.0), im: (0.0, 1.0), nx: 5, ny: 5 };
        let inverted = ScanGrid { re: (1.0, 0.0), ..grid.clone() };
        assert!(matches!(
            scan_zeros(
                ScanFunction::Partition { k: 0.5, hamiltonian: trap(2.0) },
                &inverted
            ),
            Err(Error::InvalidInput(_))
        ));
        // a quench from an unbounded-below Hamiltonian has no Gibbs state
        let unbounded =
            AlgebraElement::from_named(Group::Su11, &[("K1", cx(2.0, 0.0))]).unwrap();
        assert!(matches!(
            scan_zeros(
                ScanFunction::WorkCharacteristic {
                    k: 0.5,
                    h_i: unbounded,
                    h_f: trap(2.0),
                    beta: 1.0,
                },
                &grid
            ),
            Err(Error::Divergent(_))
        ));
    }
}

