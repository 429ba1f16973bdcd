//! Grid scans for the zero-free-region inequalities and growth bounds, and
//! the prime number theorem ratio tables.
//!
//! Grids are linear in σ and log-spaced in t. Points are evaluated in
//! parallel, collected in grid order and reduced sequentially, so results do
//! not depend on the thread count.

use std::f64::consts::{E, PI};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::ArithTable;
use crate::contour::h_function;
use crate::error::{Error, Result};
use crate::zeta::{zeta, zeta_and_derivative};
use crate::ComplexPoint;

/// Absolute slack added to evaluator error bounds before an inequality
/// counts as violated.
pub const INEQUALITY_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub t_min: f64,
    pub t_max: f64,
    pub n_sigma: usize,
    pub n_t: usize,
}

impl GridSpec {
    pub fn new(sigma_min: f64, sigma_max: f64, t_min: f64, t_max: f64, n_sigma: usize, n_t: usize) -> Self {
        Self { sigma_min, sigma_max, t_min, t_max, n_sigma, n_t }
    }

    /// A single row σ = sigma.
    pub fn line(sigma: f64, t_min: f64, t_max: f64, n_t: usize) -> Self {
        Self::new(sigma, sigma, t_min, t_max, 1, n_t)
    }

    /// Same ranges with both counts doubled (rows stay at one).
    pub fn refined(&self) -> Self {
        let n_sigma = if self.n_sigma == 1 { 1 } else { 2 * self.n_sigma };
        Self { n_sigma, n_t: 2 * self.n_t, ..*self }
    }

    pub fn validate(&self) -> Result<()> {
        let vals = [self.sigma_min, self.sigma_max, self.t_min, self.t_max];
        if vals.iter().any(|v| !v.is_finite()) {
            return Err(Error::Parameter("grid bounds must be finite".into()));
        }
        if self.sigma_min > self.sigma_max || self.t_min > self.t_max || self.t_min <= 0.0 {
            return Err(Error::Parameter("grid needs sigma_min <= sigma_max and 0 < t_min <= t_max".into()));
        }
        // a single row is allowed only when the σ range is a point
        let single_row = self.n_sigma == 1 && self.sigma_min == self.sigma_max;
        if (self.n_sigma < 2 && !single_row) || self.n_t < 2 {
            return Err(Error::Parameter("grid counts must be at least 2".into()));
        }
        Ok(())
    }

    fn sigmas(&self) -> Vec<f64> {
        if self.n_sigma == 1 {
            return vec![self.sigma_min];
        }
        let step = (self.sigma_max - self.sigma_min) / (self.n_sigma - 1) as f64;
        (0..self.n_sigma)
            .map(|i| if i + 1 == self.n_sigma { self.sigma_max } else { self.sigma_min + i as f64 * step })
            .collect()
    }

    fn ts(&self) -> Vec<f64> {
        log_spaced(self.t_min, self.t_max, self.n_t)
    }

    /// All grid points, σ-major.
    pub fn points(&self) -> Vec<ComplexPoint> {
        let ts = self.ts();
        self.sigmas()
            .into_iter()
            .flat_map(|s| ts.iter().map(move |&t| ComplexPoint::new(s, t)))
            .collect()
    }
}

fn log_spaced(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    let (la, lb) = (a.ln(), b.ln());
    (0..n)
        .map(|i| if i + 1 == n { b } else { (la + (lb - la) * i as f64 / (n - 1) as f64).exp() })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanReport {
    pub grid: GridSpec,
    pub extremum: f64,
    pub arg_extremum: ComplexPoint,
    pub empirical_constant: f64,
    pub samples: u64,
    /// Evaluator error bound at the extremal point.
    #[serde(skip)]
    pub extremum_err: f64,
}

#[derive(Clone, Copy)]
enum Extremum {
    Min,
    Max,
}

/// Sequential reduction over values in grid order; ties keep the first point.
fn reduce(points: &[ComplexPoint], vals: &[(f64, f64)], kind: Extremum) -> (f64, ComplexPoint, f64) {
    let mut best = 0;
    for i in 1..vals.len() {
        let better = match kind {
            Extremum::Min => vals[i].0 < vals[best].0,
            Extremum::Max => vals[i].0 > vals[best].0,
        };
        if better {
            best = i;
        }
    }
    (vals[best].0, points[best], vals[best].1)
}

fn eval_grid<F>(points: &[ComplexPoint], f: F) -> Result<Vec<(f64, f64)>>
where
    F: Fn(ComplexPoint) -> Result<(f64, f64)> + Sync,
{
    points.par_iter().map(|&p| f(p)).collect()
}

/// ζ³(σ)|ζ(σ+it)|⁴|ζ(σ+2it)| over the grid; extremum is its minimum.
pub fn scan_341(grid: GridSpec) -> Result<ScanReport> {
    grid.validate()?;
    if !(grid.sigma_min > 1.0) {
        return Err(Error::Domain(format!(
            "3-4-1 scan needs sigma > 1, grid starts at {}",
            grid.sigma_min
        )));
    }
    let points = grid.points();
    let vals = eval_grid(&points, |p| {
        let a = zeta(ComplexPoint::new(p.sigma, 0.0))?;
        let b = zeta(p)?;
        let c = zeta(ComplexPoint::new(p.sigma, 2.0 * p.t))?;
        let (za, zb, zc) = (a.value.re, b.value.norm(), c.value.norm());
        let prod = za.powi(3) * zb.powi(4) * zc;
        // first-order propagation of the three bounds
        let rel = 3.0 * a.err_bound / za + 4.0 * b.err_bound / zb + c.err_bound / zc;
        Ok((prod, prod * rel))
    })?;
    let (ext, arg, err) = reduce(&points, &vals, Extremum::Min);
    Ok(ScanReport {
        grid,
        extremum: ext,
        arg_extremum: arg,
        empirical_constant: ext,
        samples: points.len() as u64,
        extremum_err: err,
    })
}

/// True when the 3-4-1 minimum is at least 1 − slack − err_bound.
pub fn check_341(report: &ScanReport) -> bool {
    report.extremum >= 1.0 - INEQUALITY_SLACK - report.extremum_err
}

/// 3 + 4cos θ + cos 2θ against 2(1 + cos θ)² on a uniform grid of [0, 2π].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrigCheck {
    pub max_residual: f64,
    pub min_value: f64,
    pub samples: u64,
}

pub fn trig_identity_check(theta_samples: u64) -> Result<TrigCheck> {
    if theta_samples < 1 {
        return Err(Error::Parameter("need at least one sample".into()));
    }
    let mut max_residual: f64 = 0.0;
    let mut min_value = f64::INFINITY;
    for i in 0..theta_samples {
        let th = 2.0 * PI * i as f64 / theta_samples as f64;
        let lhs = 3.0 + 4.0 * th.cos() + (2.0 * th).cos();
        let rhs = 2.0 * (1.0 + th.cos()).powi(2);
        max_residual = max_residual.max((lhs - rhs).abs());
        min_value = min_value.min(lhs);
    }
    Ok(TrigCheck { max_residual, min_value, samples: theta_samples })
}

/// min |ζ(1+it)| over n log-spaced t ∈ [t_min, t_max]; the empirical
/// constant is min |ζ(1+it)|(log t)⁷.
pub fn nonvanishing_scan(t_min: f64, t_max: f64, n: usize) -> Result<ScanReport> {
    if !(t_min >= E && t_max > t_min) {
        return Err(Error::Domain(format!("need e <= t_min < t_max, got [{t_min}, {t_max}]")));
    }
    let grid = GridSpec::line(1.0, t_min, t_max, n);
    grid.validate()?;
    let points = grid.points();
    let vals = eval_grid(&points, |p| {
        let z = zeta(p)?;
        Ok((z.value.norm(), z.err_bound))
    })?;
    let (ext, arg, err) = reduce(&points, &vals, Extremum::Min);
    let constant = points
        .iter()
        .zip(&vals)
        .map(|(p, v)| v.0 * p.t.ln().powi(7))
        .fold(f64::INFINITY, f64::min);
    Ok(ScanReport {
        grid,
        extremum: ext,
        arg_extremum: arg,
        empirical_constant: constant,
        samples: points.len() as u64,
        extremum_err: err,
    })
}

/// sup |ζ|/log t and sup |ζ′|/log² t over a grid inside σ ≥ max(1/2, 1 − A/log t).
pub fn growth_scan(a: f64, t_max: f64, grid: GridSpec) -> Result<(ScanReport, ScanReport)> {
    grid.validate()?;
    if !(a > 0.0) {
        return Err(Error::Parameter(format!("A must be positive, got {a}")));
    }
    if grid.t_min < E || grid.t_max > t_max {
        return Err(Error::Domain(format!(
            "growth scan needs t in [e, {t_max}], grid covers [{}, {}]",
            grid.t_min, grid.t_max
        )));
    }
    let floor = 0.5f64.max(1.0 - a / grid.t_max.ln());
    if grid.sigma_min < floor {
        return Err(Error::Domain(format!(
            "grid leaves the region sigma >= max(1/2, 1 - A/log t): sigma_min {} < {floor}",
            grid.sigma_min
        )));
    }
    let points = grid.points();
    let vals: Vec<((f64, f64), (f64, f64))> = points
        .par_iter()
        .map(|&p| {
            let (z, dz) = zeta_and_derivative(p)?;
            let l = p.t.ln();
            Ok(((z.value.norm() / l, z.err_bound / l), (dz.value.norm() / (l * l), dz.err_bound / (l * l))))
        })
        .collect::<Result<_>>()?;
    let zv: Vec<_> = vals.iter().map(|v| v.0).collect();
    let dv: Vec<_> = vals.iter().map(|v| v.1).collect();
    Ok((sup_report(grid, &points, &zv), sup_report(grid, &points, &dv)))
}

fn sup_report(grid: GridSpec, points: &[ComplexPoint], vals: &[(f64, f64)]) -> ScanReport {
    let (ext, arg, err) = reduce(points, vals, Extremum::Max);
    ScanReport {
        grid,
        extremum: ext,
        arg_extremum: arg,
        empirical_constant: ext,
        samples: points.len() as u64,
        extremum_err: err,
    }
}

/// Rows of the inverse scan.
pub const INVERSE_ROWS: [f64; 4] = [1.0, 1.25, 1.5, 2.0];

/// sup |1/ζ|/(log t)⁷ and sup |ζ′/ζ|/(log t)⁹ on the rows σ ∈ {1, 1.25, 1.5, 2},
/// each with n log-spaced t ∈ [e, t_max].
pub fn inverse_zeta_scan(t_max: f64, n: usize) -> Result<(ScanReport, ScanReport)> {
    if !(t_max > E) || n < 2 {
        return Err(Error::Parameter(format!("need t_max > e and n >= 2, got {t_max}, {n}")));
    }
    let ts = log_spaced(E, t_max, n);
    let points: Vec<ComplexPoint> = INVERSE_ROWS
        .iter()
        .flat_map(|&s| ts.iter().map(move |&t| ComplexPoint::new(s, t)))
        .collect();
    let vals: Vec<((f64, f64), (f64, f64))> = points
        .par_iter()
        .map(|&p| {
            let (z, dz) = zeta_and_derivative(p)?;
            let l = p.t.ln();
            let m = z.value.norm();
            let inv = 1.0 / m;
            let ld = dz.value.norm() / m;
            let inv_err = z.err_bound / (m * (m - z.err_bound).max(f64::MIN_POSITIVE));
            let ld_err = dz.err_bound / m + ld * z.err_bound / m;
            Ok(((inv / l.powi(7), inv_err / l.powi(7)), (ld / l.powi(9), ld_err / l.powi(9))))
        })
        .collect::<Result<_>>()?;
    let grid = GridSpec::new(INVERSE_ROWS[0], INVERSE_ROWS[3], E, t_max, INVERSE_ROWS.len(), n);
    let iv: Vec<_> = vals.iter().map(|v| v.0).collect();
    let lv: Vec<_> = vals.iter().map(|v| v.1).collect();
    Ok((sup_report(grid, &points, &iv), sup_report(grid, &points, &lv)))
}

/// Ĉ = max |h(1+it)| t²/(log t)⁹ over n log-spaced t ∈ [t_min, t_max].
pub fn h_envelope_scan(t_min: f64, t_max: f64, n: usize) -> Result<ScanReport> {
    if !(t_min >= E && t_max > t_min) {
        return Err(Error::Domain(format!("need e <= t_min < t_max, got [{t_min}, {t_max}]")));
    }
    let grid = GridSpec::line(1.0, t_min, t_max, n);
    grid.validate()?;
    let points = grid.points();
    let vals = eval_grid(&points, |p| {
        let h = h_function(p)?;
        Ok((h.norm() * p.t * p.t / p.t.ln().powi(9), 0.0))
    })?;
    Ok(sup_report(grid, &points, &vals))
}

/// Ratio of the larger to the smaller of two positive constants.
pub fn refinement_ratio(a: f64, b: f64) -> f64 {
    a.max(b) / a.min(b)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PntRow {
    pub x: f64,
    pub psi_over_x: f64,
    /// 2ψ₁(x)/x².
    pub psi1_ratio: f64,
    /// ϑ(x)/(π(x) log x).
    pub theta_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PntTable {
    pub rows: Vec<PntRow>,
    /// Each column approaches 1 across the rows with at most one step away.
    pub trend_toward_one: bool,
}

pub fn pnt_ratio_table(table: &ArithTable, xs: &[f64]) -> Result<PntTable> {
    let mut rows = Vec::with_capacity(xs.len());
    for &x in xs {
        if !(x >= 2.0) {
            return Err(Error::Parameter(format!("ratio table needs x >= 2, got {x}")));
        }
        let v = table.chebyshev_values(x)?;
        rows.push(PntRow {
            x,
            psi_over_x: v.psi / x,
            psi1_ratio: 2.0 * v.psi1 / (x * x),
            theta_ratio: v.theta / (v.pi as f64 * x.ln()),
        });
    }
    let trend = [
        rows.iter().map(|r| r.psi_over_x).collect::<Vec<_>>(),
        rows.iter().map(|r| r.psi1_ratio).collect(),
        rows.iter().map(|r| r.theta_ratio).collect(),
    ]
    .iter()
    .all(|col| trends_to_one(col));
    Ok(PntTable { rows, trend_toward_one: trend })
}

/// |v − 1| shrinks between consecutive entries, allowing one exception.
pub fn trends_to_one(col: &[f64]) -> bool {
    let misses = col.windows(2).filter(|w| (w[1] - 1.0).abs() > (w[0] - 1.0).abs()).count();
    misses <= 1
}
