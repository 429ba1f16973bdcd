//! Line integrals over Re s = c: the Mellin kernel, the function
//!
//! ```text
//! h(s) = 1/(s(s+1)) · (−ζ′(s)/ζ(s) − 1/(s−1))
//! ```
//!
//! and the reconstruction
//!
//! ```text
//! ψ₁(x)/x² − ½(1 − 1/x)² = x^{c−1}/(2π) ∫ h(c+it) e^{it log x} dt,   c ≥ 1.
//! ```
//!
//! All integrals over [−T, T] use the composite trapezoid rule. The
//! discretisation estimate is the difference against the same rule at twice
//! the step.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::ArithTable;
use crate::error::{Error, Result};
use crate::summation::{ComplexNeumaier, Neumaier};
use crate::zeta::zeta_and_derivative;
use crate::ComplexPoint;

/// Envelope constant Ĉ in |h(1+it)| ≤ Ĉ (log t)⁹/t² for t ≥ e. The observed
/// maximum of |h(1+it)| t²/(log t)⁹ on [e, 10⁴] is about 0.36 (attained
/// near t = e); this value rounds it up.
pub const DEFAULT_H_ENVELOPE: f64 = 0.5;

/// Below this distance from s = 1, h is evaluated by symmetric extrapolation.
const NEAR_POLE: f64 = 1e-3;
const POLE_STEPS: [f64; 3] = [2e-2, 1e-2, 5e-3];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LineQuadSpec {
    /// Abscissa of the vertical line.
    pub c: f64,
    /// Truncation height: the integral runs over [−T, T].
    #[serde(rename = "T")]
    pub t_max: f64,
    pub dt: f64,
    /// Halve the step until the discretisation estimate meets `tol`.
    pub adaptive: bool,
    pub tol: f64,
}

impl LineQuadSpec {
    pub fn new(c: f64, t_max: f64, dt: f64) -> Self {
        Self { c, t_max, dt, adaptive: false, tol: 1e-10 }
    }

    /// Step satisfying dt ≤ min(0.25, π/(4 log x)).
    pub fn reconstruct_step(x: f64) -> f64 {
        let ln_x = x.max(1.0).ln();
        if ln_x > 0.0 {
            0.25f64.min(PI / (4.0 * ln_x))
        } else {
            0.25
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.c > 0.0 && self.c.is_finite()) {
            return Err(Error::Parameter(format!("abscissa c must be positive, got {}", self.c)));
        }
        if !(self.t_max > 0.0 && self.t_max.is_finite()) {
            return Err(Error::Parameter(format!("T must be positive, got {}", self.t_max)));
        }
        if !(self.dt > 0.0 && self.dt <= self.t_max) {
            return Err(Error::Parameter(format!("step must lie in (0, T], got {}", self.dt)));
        }
        if self.adaptive && !(self.tol > 0.0) {
            return Err(Error::Parameter("adaptive tolerance must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadReport {
    pub estimate: f64,
    pub truncation_tail_bound: f64,
    pub discretization_estimate: f64,
    pub evaluations: u64,
    /// Imaginary part of the quadrature, zero for an exact integral.
    pub imag_part: f64,
    /// Independent value the estimate is compared against, when one exists.
    pub reference: Option<f64>,
    pub deviation: Option<f64>,
}

impl QuadReport {
    /// deviation ≤ max(rel·|reference|, tail bound).
    pub fn within(&self, rel: f64) -> bool {
        match (self.reference, self.deviation) {
            (Some(r), Some(d)) => d <= (rel * r.abs()).max(self.truncation_tail_bound),
            _ => false,
        }
    }
}

/// Trapezoid sums of samples on j·dt, j = −n..=n, at step dt and 2·dt.
/// `n` must be even.
fn trapezoid_pair(vals: &[Complex64], dt: f64) -> (Complex64, Complex64) {
    let last = vals.len() - 1;
    let mut fine = ComplexNeumaier::default();
    let mut coarse = ComplexNeumaier::default();
    for (j, &v) in vals.iter().enumerate() {
        let w = if j == 0 || j == last { 0.5 } else { 1.0 };
        fine.add(v * w);
        if j % 2 == 0 {
            coarse.add(v * w);
        }
    }
    (fine.total() * dt, coarse.total() * (2.0 * dt))
}

/// Number of half-panels: an even count with step at most `dt`.
fn half_count(t_max: f64, dt: f64) -> usize {
    let n = (t_max / dt).ceil() as usize;
    n + n % 2
}

/// Integrates `f` over [−T, T]; returns (integral, discretisation estimate, evaluations).
fn integrate_line<F>(spec: &LineQuadSpec, f: F) -> Result<(Complex64, f64, u64)>
where
    F: Fn(f64) -> Result<Complex64> + Sync,
{
    let mut n = half_count(spec.t_max, spec.dt);
    let step = |n: usize| spec.t_max / n as f64;
    let grid = |n: usize| -> Vec<f64> { (0..=2 * n).map(|j| (j as f64 - n as f64) * step(n)).collect() };
    let mut vals: Vec<Complex64> =
        grid(n).par_iter().map(|&t| f(t)).collect::<Result<Vec<_>>>()?;
    let mut evaluations = vals.len() as u64;
    let (mut fine, coarse) = trapezoid_pair(&vals, step(n));
    let mut disc = (fine - coarse).norm();
    if spec.adaptive {
        for _ in 0..8 {
            if disc <= spec.tol {
                break;
            }
            // only the midpoints are new
            let h = step(2 * n);
            let mids: Vec<Complex64> = (0..2 * n)
                .into_par_iter()
                .map(|j| f(-spec.t_max + (2 * j + 1) as f64 * h))
                .collect::<Result<Vec<_>>>()?;
            evaluations += mids.len() as u64;
            let mut merged = Vec::with_capacity(vals.len() + mids.len());
            for (j, &v) in vals.iter().enumerate() {
                merged.push(v);
                if j < mids.len() {
                    merged.push(mids[j]);
                }
            }
            vals = merged;
            n *= 2;
            let (f2, c2) = trapezoid_pair(&vals, step(n));
            fine = f2;
            disc = (f2 - c2).norm();
        }
    }
    Ok((fine, disc, evaluations))
}

/// (1/2π) ∫_{−T}^{T} u^{−(c+it)} / Π_{j=0}^{k} (c+it+j) dt, whose limit is
/// (1−u)^k/k! for 0 < u ≤ 1 and 0 for u > 1.
pub fn kernel_integral(u: f64, k: u32, spec: &LineQuadSpec) -> Result<QuadReport> {
    spec.validate()?;
    if !(u > 0.0 && u.is_finite()) {
        return Err(Error::Parameter(format!("u must be positive, got {u}")));
    }
    if !(1..=2).contains(&k) {
        return Err(Error::Parameter(format!("k must be 1 or 2, got {k}")));
    }
    let ln_u = u.ln();
    let c = spec.c;
    let integrand = |t: f64| -> Result<Complex64> {
        let z = Complex64::new(c, t);
        let mut den = z;
        for j in 1..=k {
            den *= z + j as f64;
        }
        Ok(Complex64::from_polar((-c * ln_u).exp(), -t * ln_u) / den)
    };
    let (total, disc, evaluations) = integrate_line(spec, integrand)?;
    let reference = kernel_closed_form(u, k);
    let estimate = total.re / (2.0 * PI);
    Ok(QuadReport {
        estimate,
        truncation_tail_bound: u.powf(-c) * 2.0 / (k as f64 * spec.t_max.powi(k as i32)),
        discretization_estimate: disc / (2.0 * PI),
        evaluations,
        imag_part: total.im / (2.0 * PI),
        reference: Some(reference),
        deviation: Some((estimate - reference).abs()),
    })
}

/// (1−u)^k/k! for u ≤ 1, else 0.
pub fn kernel_closed_form(u: f64, k: u32) -> f64 {
    if u > 1.0 {
        return 0.0;
    }
    let fact: f64 = (1..=k).map(f64::from).product();
    (1.0 - u).powi(k as i32) / fact
}

/// −ζ′(s)/ζ(s) − 1/(s−1).
fn bracket(s: Complex64) -> Result<Complex64> {
    let (z, dz) = zeta_and_derivative(s.into())?;
    Ok(-dz.value / z.value - 1.0 / (s - 1.0))
}

/// h(s) = (−ζ′/ζ − 1/(s−1)) / (s(s+1)), analytic at s = 1.
///
/// Within 1e−3 of s = 1 the bracket is replaced by the even average
/// (B(s+δ) + B(s−δ))/2 at δ ∈ {2, 1, 0.5}·10⁻², Richardson-extrapolated in δ².
pub fn h_function(s: ComplexPoint) -> Result<Complex64> {
    let z = s.to_complex();
    if z == Complex64::new(0.0, 0.0) || z == Complex64::new(-1.0, 0.0) {
        return Err(Error::Domain(format!("h has a pole at {s}")));
    }
    let b = if (z - 1.0).norm() < NEAR_POLE {
        let mut avg = [Complex64::new(0.0, 0.0); 3];
        for (a, &d) in avg.iter_mut().zip(&POLE_STEPS) {
            *a = (bracket(z + d)? + bracket(z - d)?) * 0.5;
        }
        let r1 = (avg[1] * 4.0 - avg[0]) / 3.0;
        let r2 = (avg[2] * 4.0 - avg[1]) / 3.0;
        (r2 * 16.0 - r1) / 15.0
    } else {
        bracket(z)?
    };
    Ok(b / (z * (z + 1.0)))
}

/// Samples h(c + it) on t = j·dt, j = −n..=n, reusable across x and T.
#[derive(Debug, Clone)]
pub struct HLine {
    pub c: f64,
    pub dt: f64,
    values: Vec<Complex64>,
}

impl HLine {
    /// Samples up to height `t_max` with a step ≤ `dt` that divides `t_base`
    /// into an even number of panels, so every T = t_base·2^m ≤ t_max lands
    /// on the grid.
    pub fn sample(c: f64, t_max: f64, t_base: f64, dt: f64) -> Result<Self> {
        if !(c >= 1.0) {
            return Err(Error::Domain(format!("h line needs c >= 1, got {c}")));
        }
        if !(t_base > 0.0 && t_max >= t_base && dt > 0.0) {
            return Err(Error::Parameter("need 0 < t_base <= t_max and dt > 0".into()));
        }
        let step = t_base / half_count(t_base, dt) as f64;
        let n = (t_max / step).round() as usize;
        let values = (0..=2 * n)
            .into_par_iter()
            .map(|j| h_function(ComplexPoint::new(c, (j as f64 - n as f64) * step)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { c, dt: step, values })
    }

    pub fn t_max(&self) -> f64 {
        self.half() as f64 * self.dt
    }

    fn half(&self) -> usize {
        (self.values.len() - 1) / 2
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// (t, h(c+it)) pairs in ascending t.
    pub fn samples(&self) -> impl Iterator<Item = (f64, Complex64)> + '_ {
        let n = self.half() as f64;
        self.values.iter().enumerate().map(move |(j, &v)| ((j as f64 - n) * self.dt, v))
    }

    /// Trapezoid value of x^{c−1}/(2π) ∫_{−T}^{T} h(c+it) e^{it log x} dt
    /// using the stored samples.
    pub fn reconstruct(&self, x: f64, t_max: f64, table: &ArithTable, envelope: f64) -> Result<QuadReport> {
        check_x(x, table)?;
        let m = (t_max / self.dt).round() as usize;
        if m == 0 || m > self.half() || !m.is_multiple_of(2) || ((m as f64) * self.dt - t_max).abs() > 1e-9 * t_max {
            return Err(Error::Parameter(format!("T = {t_max} is not on the sampled grid")));
        }
        let n = self.half();
        let ln_x = x.ln();
        let window: Vec<Complex64> = (n - m..=n + m)
            .map(|j| {
                let t = (j as f64 - n as f64) * self.dt;
                self.values[j] * Complex64::from_polar(1.0, t * ln_x)
            })
            .collect();
        let (fine, coarse) = trapezoid_pair(&window, self.dt);
        let pref = x.powf(self.c - 1.0) / (2.0 * PI);
        let lhs = reconstruct_lhs(x, table)?;
        let estimate = pref * fine.re;
        Ok(QuadReport {
            estimate,
            truncation_tail_bound: reconstruct_tail(x, self.c, t_max, envelope)?,
            discretization_estimate: pref * (fine - coarse).norm(),
            evaluations: window.len() as u64,
            imag_part: pref * fine.im,
            reference: Some(lhs),
            deviation: Some((estimate - lhs).abs()),
        })
    }
}

fn check_x(x: f64, table: &ArithTable) -> Result<()> {
    if !(x >= 1.0 && x.is_finite()) {
        return Err(Error::Parameter(format!("x must be at least 1, got {x}")));
    }
    if x > table.limit() as f64 {
        return Err(Error::Range { x, limit: table.limit() });
    }
    Ok(())
}

/// ψ₁(x)/x² − ½(1 − 1/x)² from the sieve.
pub fn reconstruct_lhs(x: f64, table: &ArithTable) -> Result<f64> {
    let d = 1.0 - 1.0 / x;
    Ok(table.psi1(x)? / (x * x) - 0.5 * d * d)
}

/// ∫_T^∞ (log t)⁹/t² dt = (1/T) Σ_{j=0}^{9} 9!/(9−j)! (log T)^{9−j}.
fn log9_tail(t_max: f64) -> f64 {
    let l = t_max.ln();
    let mut coef = 1.0;
    let mut acc = Neumaier::default();
    for j in 0..=9 {
        acc.add(coef * l.powi(9 - j));
        coef *= (9 - j) as f64;
    }
    acc.total() / t_max
}

/// Tail of the reconstruction integral beyond |t| = T.
///
/// For c > 1 the bound |h(c+it)| ≤ (−ζ′(c)/ζ(c) + 1/(c−1))/t² is rigorous.
/// On c = 1 it uses the empirical envelope Ĉ (log t)⁹/t².
pub fn reconstruct_tail(x: f64, c: f64, t_max: f64, envelope: f64) -> Result<f64> {
    let pref = x.powf(c - 1.0) / (2.0 * PI);
    if c > 1.0 {
        let k = log_derivative_at(c)? + 1.0 / (c - 1.0);
        Ok(pref * 2.0 * k / t_max)
    } else {
        if t_max < std::f64::consts::E {
            return Err(Error::Parameter(format!("T must be at least e, got {t_max}")));
        }
        Ok(pref * 2.0 * envelope * log9_tail(t_max))
    }
}

/// −ζ′(c)/ζ(c) = Σ Λ(n) n^{−c} for real c > 1.
fn log_derivative_at(c: f64) -> Result<f64> {
    let (z, dz) = zeta_and_derivative(ComplexPoint::new(c, 0.0))?;
    Ok(-dz.value.re / z.value.re)
}

/// Reconstructs ψ₁(x)/x² − ½(1 − 1/x)² on Re s = c ≥ 1 and compares it
/// with the sieve.
pub fn reconstruct_psi1(x: f64, spec: &LineQuadSpec, table: &ArithTable) -> Result<QuadReport> {
    reconstruct_psi1_with_envelope(x, spec, table, DEFAULT_H_ENVELOPE)
}

pub fn reconstruct_psi1_with_envelope(
    x: f64,
    spec: &LineQuadSpec,
    table: &ArithTable,
    envelope: f64,
) -> Result<QuadReport> {
    spec.validate()?;
    if spec.c < 1.0 {
        return Err(Error::Domain(format!("reconstruction needs c >= 1, got {}", spec.c)));
    }
    check_x(x, table)?;
    let ln_x = x.ln();
    let c = spec.c;
    let (total, disc, evaluations) = integrate_line(spec, |t| {
        Ok(h_function(ComplexPoint::new(c, t))? * Complex64::from_polar(1.0, t * ln_x))
    })?;
    let pref = x.powf(c - 1.0) / (2.0 * PI);
    let lhs = reconstruct_lhs(x, table)?;
    let estimate = pref * total.re;
    Ok(QuadReport {
        estimate,
        truncation_tail_bound: reconstruct_tail(x, c, spec.t_max, envelope)?,
        discretization_estimate: pref * disc,
        evaluations,
        imag_part: pref * total.im,
        reference: Some(lhs),
        deviation: Some((estimate - lhs).abs()),
    })
}

/// ψ₁(x)/x² = x^{c−1}/(2π) ∫ x^{it} (−ζ′/ζ)(c+it) / ((c+it)(c+it+1)) dt for c > 1.
pub fn mellin_psi1_direct(x: f64, c: f64, spec: &LineQuadSpec, table: &ArithTable) -> Result<QuadReport> {
    if !(c > 1.0) {
        return Err(Error::Domain(format!("direct Perron integral needs c > 1, got {c}")));
    }
    let spec = LineQuadSpec { c, ..*spec };
    spec.validate()?;
    check_x(x, table)?;
    let ln_x = x.ln();
    let (total, disc, evaluations) = integrate_line(&spec, |t| {
        let s = Complex64::new(c, t);
        let (z, dz) = zeta_and_derivative(s.into())?;
        Ok(-dz.value / z.value / (s * (s + 1.0)) * Complex64::from_polar(1.0, t * ln_x))
    })?;
    let pref = x.powf(c - 1.0) / (2.0 * PI);
    let reference = table.psi1(x)? / (x * x);
    let estimate = pref * total.re;
    Ok(QuadReport {
        estimate,
        truncation_tail_bound: pref * 2.0 * log_derivative_at(c)? / spec.t_max,
        discretization_estimate: pref * disc,
        evaluations,
        imag_part: pref * total.im,
        reference: Some(reference),
        deviation: Some((estimate - reference).abs()),
    })
}

/// M̂ x^{c−1} (log T)⁹ (c−1)/T², the horizontal-segment contribution when
/// the line is shifted from c to 1.
pub fn horizontal_segment_bound(t_max: f64, c: f64, x: f64, m_hat: f64) -> Result<f64> {
    if !(t_max >= std::f64::consts::E) {
        return Err(Error::Parameter(format!("T must be at least e, got {t_max}")));
    }
    if !(c >= 1.0) || !(x >= 1.0) || !(m_hat >= 0.0) {
        return Err(Error::Parameter("need c >= 1, x >= 1, M >= 0".into()));
    }
    Ok(m_hat * x.powf(c - 1.0) * t_max.ln().powi(9) * (c - 1.0) / (t_max * t_max))
}

#[cfg(test)]
mod tests {
    use super::*;

    const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_6;

    #[test]
    fn kernel_examples() {
        let spec = LineQuadSpec::new(2.0, 1000.0, 0.1);
        let r = kernel_integral(1.0, 1, &spec).unwrap();
        assert!(r.deviation.unwrap() < 1e-3);
        let r = kernel_integral(0.5, 2, &spec).unwrap();
        assert_eq!(r.reference, Some(0.125));
        assert!(r.deviation.unwrap() < 1e-6);
        let r = kernel_integral(2.0, 2, &spec).unwrap();
        assert!(r.estimate.abs() <= r.truncation_tail_bound);
        assert!(r.imag_part.abs() < 1e-12);
    }

    #[test]
    fn kernel_adaptive_refines() {
        let mut spec = LineQuadSpec::new(2.0, 200.0, 2.0);
        let coarse = kernel_integral(0.5, 1, &spec).unwrap();
        spec.adaptive = true;
        spec.tol = 1e-9;
        let fine = kernel_integral(0.5, 1, &spec).unwrap();
        assert!(fine.evaluations > coarse.evaluations);
        assert!(fine.discretization_estimate <= 1e-9);
    }

    #[test]
    fn kernel_parameter_errors() {
        let spec = LineQuadSpec::new(2.0, 100.0, 0.1);
        assert!(kernel_integral(0.0, 1, &spec).is_err());
        assert!(kernel_integral(0.5, 3, &spec).is_err());
        assert!(kernel_integral(0.5, 1, &LineQuadSpec::new(-1.0, 100.0, 0.1)).is_err());
        assert!(kernel_integral(0.5, 1, &LineQuadSpec::new(2.0, 100.0, 0.0)).is_err());
    }

    #[test]
    fn h_reference_values() {
        // 40-digit references
        let cases = [
            ((1.0, 2.0), (0.064_524_407_853_803_278, 0.048_791_506_043_940_329)),
            ((1.0, 1e-4), (-0.288_607_825_735_089_54, 5.266_848_575_824_829_1e-5)),
            ((1.0005, 0.0), (-0.288_344_657_816_269_08, 0.0)),
            ((1.0, 100.0), (-6.564_503_048_705_027_1e-5, -7.432_391_965_051_822_2e-6)),
        ];
        for ((sr, si), (re, im)) in cases {
            let got = h_function(ComplexPoint::new(sr, si)).unwrap();
            let want = Complex64::new(re, im);
            assert!((got - want).norm() < 1e-9 * want.norm().max(1e-3), "h({sr}+{si}i) = {got}");
        }
    }

    #[test]
    fn h_at_one_is_minus_half_gamma() {
        let h1 = h_function(ComplexPoint::new(1.0, 0.0)).unwrap();
        assert!((h1.re + EULER_GAMMA / 2.0).abs() < 1e-9, "{h1}");
        assert_eq!(h1.im, 0.0);
        // continuity across the switch to extrapolation
        let inside = h_function(ComplexPoint::new(1.0, 0.99e-3)).unwrap();
        let out1 = h_function(ComplexPoint::new(1.0, 1.01e-3)).unwrap();
        let out2 = h_function(ComplexPoint::new(1.0, 1.03e-3)).unwrap();
        assert!((inside - (out1 * 2.0 - out2)).norm() < 1e-8);
    }

    #[test]
    fn h_conjugate_symmetric() {
        for t in [0.5, 3.0, 14.0, 77.7] {
            let a = h_function(ComplexPoint::new(1.0, t)).unwrap();
            let b = h_function(ComplexPoint::new(1.0, -t)).unwrap();
            assert!((a - b.conj()).norm() <= 1e-10 * a.norm());
        }
        assert!(h_function(ComplexPoint::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn reconstruct_at_one_vanishes() {
        let table = ArithTable::build(1000).unwrap();
        let spec = LineQuadSpec::new(1.0, 200.0, 0.25);
        let r = reconstruct_psi1(1.0, &spec, &table).unwrap();
        assert_eq!(r.reference, Some(0.0));
        assert!(r.estimate.abs() <= r.truncation_tail_bound);
        assert!(r.estimate.abs() < 5e-3);
    }

    #[test]
    fn reconstruct_small_height() {
        let table = ArithTable::build(1000).unwrap();
        let spec = LineQuadSpec::new(1.0, 400.0, LineQuadSpec::reconstruct_step(10.0));
        let r = reconstruct_psi1(10.0, &spec, &table).unwrap();
        assert!(r.within(0.02), "{r:?}");
        assert!(r.imag_part.abs() <= 1e-8 * r.estimate.abs());
        // the cached line gives the same quadrature
        let line = HLine::sample(1.0, 400.0, 400.0, spec.dt).unwrap();
        let cached = line.reconstruct(10.0, 400.0, &table, DEFAULT_H_ENVELOPE).unwrap();
        assert!((cached.estimate - r.estimate).abs() < 1e-12);
        assert!(line.reconstruct(10.0, 401.0, &table, DEFAULT_H_ENVELOPE).is_err());
    }

    #[test]
    fn reconstruct_off_line() {
        let table = ArithTable::build(1000).unwrap();
        let spec = LineQuadSpec::new(2.0, 300.0, 0.25);
        let r = reconstruct_psi1(10.0, &spec, &table).unwrap();
        assert!(r.within(0.02), "{r:?}");
        let d = mellin_psi1_direct(10.0, 2.0, &spec, &table).unwrap();
        assert!(d.deviation.unwrap() <= 0.02 * d.reference.unwrap(), "{d:?}");
        let one = mellin_psi1_direct(1.0, 2.0, &spec, &table).unwrap();
        assert!(one.estimate.abs() <= one.truncation_tail_bound);
        assert!(mellin_psi1_direct(10.0, 1.0, &spec, &table).is_err());
        assert!(reconstruct_psi1(10.0, &LineQuadSpec::new(0.5, 10.0, 0.1), &table).is_err());
    }

    #[test]
    fn segment_bound() {
        assert_eq!(horizontal_segment_bound(1e3, 1.0, 10.0, 1.0).unwrap(), 0.0);
        let a = horizontal_segment_bound(1e3, 1.5, 10.0, 1.0).unwrap();
        let b = horizontal_segment_bound(2e3, 1.5, 10.0, 1.0).unwrap();
        assert!(a > 0.0 && a.is_finite());
        let ratio = (2e3f64.ln() / 1e3f64.ln()).powi(9) / 4.0;
        assert!((b / a - ratio).abs() < 1e-12 && ratio < 1.0);
        assert!(horizontal_segment_bound(2.0, 1.5, 10.0, 1.0).is_err());
    }

    #[test]
    fn log9_tail_matches_quadrature() {
        // crude midpoint check on [T, 1e7] plus the analytic remainder there
        let t0: f64 = 50.0;
        let tail = log9_tail(t0);
        let mut acc = 0.0;
        let n = 2_000_000;
        let (a, b) = (t0.ln(), 1e7f64.ln());
        let h = (b - a) / n as f64;
        for i in 0..n {
            let y = a + (i as f64 + 0.5) * h;
            acc += y.powi(9) * (-y).exp() * h;
        }
        let rest = log9_tail(1e7);
        assert!(((acc + rest) / tail - 1.0).abs() < 1e-6);
    }
}
