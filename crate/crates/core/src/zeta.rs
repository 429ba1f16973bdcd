//! ζ(s), ζ′(s) and the Hurwitz zeta function in the half-plane σ > 0.
//!
//! The representation is
//!
//! ```text
//! ζ(s) = Σ_{n=1}^{N} n^{-s} + N^{1-s}/(s-1) - s ∫_N^∞ (x - ⌊x⌋) x^{-s-1} dx
//! ```
//!
//! with the integral split into unit intervals [k, k+1) evaluated in closed
//! form for `extra_terms` intervals, and the remaining tail from K = N +
//! extra_terms handled by its Bernoulli expansion
//!
//! ```text
//! s ∫_K^∞ {x} x^{-s-1} dx = K^{-s}/2 - Σ_{j=1}^{m} B_{2j}/(2j)! (s)_{2j-1} K^{-s-2j+1} - R_m
//! ```
//!
//! where (s)_r is the rising factorial. The remainder satisfies
//! |R_m| ≤ c_{2m+1} |(s)_{2m+1}| K^{-σ-2m} / (σ + 2m) with
//! c_1 = 1/2 and c_r = 2ζ(r)/(2π)^r, which is the truncation part of
//! `err_bound`. With m = 0 this reduces to the plain |s|K^{-σ}/(2σ) tail
//! estimate. The order m is picked per call to minimise the bound.
//!
//! The Hurwitz function uses the same scheme with n + a in place of n; that
//! transplant is an extension of the classical ζ representation.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::arith::ArithTable;
use crate::error::{Error, Result};
use crate::gamma::gamma;
use crate::summation::ComplexNeumaier;
use crate::ComplexPoint;

/// B_{2j}/(2j)! for j = 1..=30.
const BERNOULLI_OVER_FACTORIAL: [f64; 30] = [
    8.333_333_333_333_333_3e-2,
    -1.388_888_888_888_888_9e-3,
    3.306_878_306_878_306_9e-5,
    -8.267_195_767_195_767_2e-7,
    2.087_675_698_786_809_9e-8,
    -5.284_190_138_687_493_2e-10,
    1.338_253_653_068_467_9e-11,
    -3.389_680_296_322_582_9e-13,
    8.586_062_056_277_844_6e-15,
    -2.174_868_698_558_061_9e-16,
    5.509_002_828_360_229_5e-18,
    -1.395_446_468_581_252_3e-19,
    3.534_707_039_629_467_5e-21,
    -8.953_517_427_037_546_9e-23,
    2.267_952_452_337_683_1e-24,
    -5.744_790_668_872_202_4e-26,
    1.455_172_475_614_864_9e-27,
    -3.685_994_940_665_310_2e-29,
    9.336_734_257_095_044_7e-31,
    -2.365_022_415_700_629_9e-32,
    5.990_671_762_482_134_3e-34,
    -1.517_454_884_468_290_3e-35,
    3.843_758_125_454_188_2e-37,
    -9.736_353_072_646_691e-39,
    2.466_247_044_200_681e-40,
    -6.247_076_741_820_743_7e-42,
    1.582_403_024_464_491_4e-43,
    -4.008_273_685_948_936e-45,
    1.015_307_585_556_955_6e-46,
    -2.571_804_158_241_871_7e-48,
];

/// Default relative target for the truncation part of the error bound.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// Largest number of explicit intervals the automatic driver will add.
const MAX_AUTO_EXTRA: u64 = 1 << 20;

/// A complex value with an absolute error bound and the cutoffs that produced it.
///
/// `err_bound` is the rigorous truncation remainder plus a worst-case
/// floating-point rounding estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalResult {
    pub value: Complex64,
    pub err_bound: f64,
    pub n_cutoff: u64,
    pub extra_terms: u64,
}

/// Value and derivative from one pass, with the truncation part of each
/// bound kept separate from rounding.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Pass {
    value: Complex64,
    trunc: f64,
    round: f64,
    deriv: Complex64,
    deriv_trunc: f64,
    deriv_round: f64,
    n_cutoff: u64,
    extra_terms: u64,
}

impl Pass {
    fn value_result(&self) -> EvalResult {
        EvalResult {
            value: self.value,
            err_bound: self.trunc + self.round,
            n_cutoff: self.n_cutoff,
            extra_terms: self.extra_terms,
        }
    }

    fn deriv_result(&self) -> EvalResult {
        EvalResult {
            value: self.deriv,
            err_bound: self.deriv_trunc + self.deriv_round,
            n_cutoff: self.n_cutoff,
            extra_terms: self.extra_terms,
        }
    }
}

fn check_half_plane(s: ComplexPoint) -> Result<Complex64> {
    if !s.sigma.is_finite() || !s.t.is_finite() {
        return Err(Error::Parameter(format!("non-finite point {s}")));
    }
    if s.sigma <= 0.0 {
        return Err(Error::Domain(format!("requires sigma > 0, got {s}")));
    }
    if s.sigma == 1.0 && s.t == 0.0 {
        return Err(Error::Domain("s = 1 is the pole of zeta".into()));
    }
    Ok(s.to_complex())
}

/// Default main-sum cutoff: max(30, ⌈2|t|⌉).
pub fn default_cutoff(s: ComplexPoint) -> u64 {
    30u64.max((2.0 * s.t.abs()).ceil() as u64)
}

/// b^{-s} as e^{-σ ln b}(cos(t ln b) − i sin(t ln b)).
#[inline]
fn power_neg(s: Complex64, ln_b: f64) -> Complex64 {
    Complex64::from_polar((-s.re * ln_b).exp(), -s.im * ln_b)
}

/// J(b) = ∫₀¹ u (b+u)^{-s-1} du and L(b) = ∫₀¹ u ln(b+u) (b+u)^{-s-1} du.
fn interval_integrals(s: Complex64, b: f64) -> (Complex64, Complex64) {
    let one = Complex64::new(1.0, 0.0);
    if b >= 4.0_f64.max((s + 1.0).norm()) {
        // binomial series of (1 + u/b)^{-s-1}, integrated termwise
        let ln_b = b.ln();
        let lead = power_neg(s + 1.0, ln_b);
        let mut c = one;
        let mut dc = Complex64::new(0.0, 0.0);
        let mut inv_bj = 1.0;
        let mut j_sum = ComplexNeumaier::default();
        let mut l_sum = ComplexNeumaier::default();
        for j in 0..400u32 {
            let w = inv_bj / (j as f64 + 2.0);
            let jt = c * w;
            let lt = (c * ln_b - dc) * w;
            j_sum.add(jt);
            l_sum.add(lt);
            let scale = j_sum.total().norm().max(l_sum.total().norm());
            if j >= 2 && jt.norm().max(lt.norm()) <= 1e-18 * scale {
                break;
            }
            let factor = -s - 1.0 - j as f64;
            let next = c * factor / (j as f64 + 1.0);
            dc = (dc * factor - c) / (j as f64 + 1.0);
            c = next;
            inv_bj /= b;
        }
        return (lead * j_sum.total(), lead * l_sum.total());
    }
    let ln_b1 = (b + 1.0).ln();
    let p1 = power_neg(s, ln_b1);
    let (p0, ln_b) = if b > 0.0 {
        (power_neg(s, b.ln()), b.ln())
    } else {
        (Complex64::new(0.0, 0.0), 0.0)
    };
    let oms = one - s;
    let a = p1 * (b + 1.0) - p0 * b;
    let da = -(p1 * (b + 1.0) * ln_b1) + p0 * b * ln_b;
    let bv = p1 - p0;
    let dbv = -(p1 * ln_b1) + p0 * ln_b;
    let j = a / oms + bv * b / s;
    let dj = da / oms + a / (oms * oms) + (dbv / s - bv / (s * s)) * b;
    (j, -dj)
}

/// Core evaluator for Σ_{n=first}^{N} (n+shift)^{-s} continued to σ > 0.
pub(crate) fn em_pass(s: Complex64, shift: f64, first: u64, n_cutoff: u64, extra_terms: u64) -> Pass {
    let eps = f64::EPSILON;
    let mut sum = ComplexNeumaier::default();
    let mut dsum = ComplexNeumaier::default();
    let mut mag = 0.0;
    let mut dmag = 0.0;
    for n in first..=n_cutoff {
        let b = n as f64 + shift;
        let ln_b = b.ln();
        let term = power_neg(s, ln_b);
        sum.add(term);
        dsum.add(-term * ln_b);
        let m = term.norm();
        mag += m;
        dmag += m * ln_b;
    }

    // pole term and its derivative
    let base_n = n_cutoff as f64 + shift;
    let ln_n = base_n.ln();
    let sm1 = s - 1.0;
    let pow_n = power_neg(s - 1.0, ln_n);
    let pole = pow_n / sm1;
    let dpole = -pow_n * ln_n / sm1 - pow_n / (sm1 * sm1);
    sum.add(pole);
    dsum.add(dpole);
    mag += pole.norm();
    dmag += dpole.norm();

    // explicit intervals: value gets -s J, derivative gets -(J - s L)
    for k in n_cutoff..n_cutoff + extra_terms {
        let (j, l) = interval_integrals(s, k as f64 + shift);
        let vt = -s * j;
        let dt = -(j - s * l);
        sum.add(vt);
        dsum.add(dt);
        mag += vt.norm();
        dmag += dt.norm();
    }

    // Bernoulli tail at base K + shift
    let kb = (n_cutoff + extra_terms) as f64 + shift;
    let ln_k = kb.ln();
    let sigma = s.re;
    let pk = power_neg(s, ln_k);
    let mut tail = pk * 0.5;
    let mut dtail = -pk * ln_k * 0.5;

    // rising factorial (s)_r and its s-derivative, starting at r = 1
    let mut rf = s;
    let mut drf = Complex64::new(1.0, 0.0);
    let mut r = 1u32;
    let bound_at = |rf: Complex64, drf: Complex64, r: u32| -> (f64, f64) {
        let c_r = if r == 1 { 0.5 } else { 2.0 * 1.21 / (2.0 * PI).powi(r as i32) };
        let p = sigma + r as f64 - 1.0;
        let kp = (-p * ln_k).exp();
        let v = c_r * rf.norm() * kp / p;
        let d = c_r * (drf.norm() * kp / p + rf.norm() * kp * (ln_k / p + 1.0 / (p * p)));
        (v, d)
    };
    let (mut trunc, mut dtrunc) = bound_at(rf, drf, r);
    let target = eps * 1e-3 * (sum.total() - tail).norm().max(1e-300);
    for beta in BERNOULLI_OVER_FACTORIAL {
        if trunc <= target {
            break;
        }
        // term with (s)_{2j-1}; rf currently holds (s)_{r}, r = 2j - 1
        let kpow = power_neg(s + (r as f64), ln_k);
        let term = rf * kpow * beta;
        let dterm = (drf - rf * ln_k) * kpow * beta;
        // advance to (s)_{r+2}
        let mut rf2 = rf;
        let mut drf2 = drf;
        for i in r..r + 2 {
            drf2 = drf2 * (s + i as f64) + rf2;
            rf2 *= s + i as f64;
        }
        let (nt, ndt) = bound_at(rf2, drf2, r + 2);
        if nt >= trunc {
            break;
        }
        tail -= term;
        dtail -= dterm;
        mag += term.norm();
        dmag += dterm.norm();
        rf = rf2;
        drf = drf2;
        r += 2;
        trunc = nt;
        dtrunc = ndt;
    }
    sum.add(-tail);
    dsum.add(-dtail);
    mag += tail.norm();
    dmag += dtail.norm();

    // exp/sin/cos of arguments of size |t| ln K carry absolute phase error ~ eps |t| ln K
    let phase = 4.0 + s.im.abs() * ln_k.max(1.0);
    Pass {
        value: sum.total(),
        trunc,
        round: 2.0 * eps * phase * mag,
        deriv: dsum.total(),
        deriv_trunc: dtrunc,
        deriv_round: 2.0 * eps * phase * dmag,
        n_cutoff,
        extra_terms,
    }
}

fn check_cutoffs(n_cutoff: u64) -> Result<()> {
    if n_cutoff < 1 {
        return Err(Error::Parameter("n_cutoff must be at least 1".into()));
    }
    Ok(())
}

/// ζ(s) with an explicit main-sum cutoff and interval count.
pub fn zeta_em(s: ComplexPoint, n_cutoff: u64, extra_terms: u64) -> Result<EvalResult> {
    let z = check_half_plane(s)?;
    check_cutoffs(n_cutoff)?;
    Ok(em_pass(z, 0.0, 1, n_cutoff, extra_terms).value_result())
}

/// ζ′(s) from the term-by-term derivative of the same representation.
pub fn zeta_prime_em(s: ComplexPoint, n_cutoff: u64, extra_terms: u64) -> Result<EvalResult> {
    let z = check_half_plane(s)?;
    check_cutoffs(n_cutoff)?;
    Ok(em_pass(z, 0.0, 1, n_cutoff, extra_terms).deriv_result())
}

/// Runs the evaluator with the default cutoff, adding explicit intervals
/// until the truncation bound meets `tol` relative to the value.
fn auto_pass(z: Complex64, shift: f64, first: u64, n_cutoff: u64, tol: f64, deriv: bool) -> Result<Pass> {
    let mut extra = 0u64;
    loop {
        let pass = em_pass(z, shift, first, n_cutoff, extra);
        let (v, tr) = if deriv { (pass.deriv, pass.deriv_trunc) } else { (pass.value, pass.trunc) };
        if tr <= tol * v.norm().max(1e-300) || tr <= tol * 1e-3 {
            return Ok(pass);
        }
        if extra >= MAX_AUTO_EXTRA {
            return Err(Error::Evaluation(format!(
                "truncation bound {tr:e} above tolerance {tol:e} at s = {z}"
            )));
        }
        extra = (2 * extra).max(n_cutoff);
    }
}

/// ζ(s) with default cutoffs at the default tolerance.
pub fn zeta(s: ComplexPoint) -> Result<EvalResult> {
    zeta_with_tolerance(s, DEFAULT_TOLERANCE)
}

pub fn zeta_with_tolerance(s: ComplexPoint, tol: f64) -> Result<EvalResult> {
    let z = check_half_plane(s)?;
    Ok(auto_pass(z, 0.0, 1, default_cutoff(s), tol, false)?.value_result())
}

pub fn zeta_prime(s: ComplexPoint) -> Result<EvalResult> {
    let z = check_half_plane(s)?;
    Ok(auto_pass(z, 0.0, 1, default_cutoff(s), DEFAULT_TOLERANCE, true)?.deriv_result())
}

/// ζ(s) and ζ′(s) from a single pass with default cutoffs.
pub fn zeta_and_derivative(s: ComplexPoint) -> Result<(EvalResult, EvalResult)> {
    let z = check_half_plane(s)?;
    let pass = auto_pass(z, 0.0, 1, default_cutoff(s), DEFAULT_TOLERANCE, true)?;
    Ok((pass.value_result(), pass.deriv_result()))
}

/// Hurwitz ζ(s, a) = Σ_{n≥0} (n + a)^{-s}, continued to σ > 0.
pub fn hurwitz_zeta(s: ComplexPoint, a: f64, n_cutoff: u64, extra_terms: u64) -> Result<EvalResult> {
    let z = check_half_plane(s)?;
    check_cutoffs(n_cutoff)?;
    check_shift(a)?;
    Ok(em_pass(z, a, 0, n_cutoff, extra_terms).value_result())
}

/// Hurwitz zeta with default cutoffs.
pub fn hurwitz_zeta_auto(s: ComplexPoint, a: f64) -> Result<EvalResult> {
    let z = check_half_plane(s)?;
    check_shift(a)?;
    Ok(auto_pass(z, a, 0, default_cutoff(s), DEFAULT_TOLERANCE, false)?.value_result())
}

fn check_shift(a: f64) -> Result<()> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::Domain(format!("Hurwitz parameter must lie in (0, 1], got {a}")));
    }
    Ok(())
}

/// Periodic zeta F(x, s) = Σ_{n≥1} e^{2πinx} n^{-s} truncated at `n_terms`,
/// with the absolute tail bound n_terms^{1-σ}/(σ-1).
pub fn periodic_zeta(x: f64, s: ComplexPoint, n_terms: u64) -> Result<EvalResult> {
    if !x.is_finite() {
        return Err(Error::Parameter(format!("non-finite x {x}")));
    }
    if !(s.sigma > 1.0) {
        return Err(Error::Domain(format!("periodic zeta needs sigma > 1, got {s}")));
    }
    if n_terms < 1 {
        return Err(Error::Parameter("n_terms must be at least 1".into()));
    }
    let z = s.to_complex();
    let frac = x - x.floor();
    let mut sum = ComplexNeumaier::default();
    let mut mag = 0.0;
    for n in 1..=n_terms {
        let ln_n = (n as f64).ln();
        // reduce nx mod 1 before scaling by 2π
        let nx = (n as f64 * frac).fract();
        let term = Complex64::from_polar((-z.re * ln_n).exp(), 2.0 * PI * nx - z.im * ln_n);
        mag += term.norm();
        sum.add(term);
    }
    let tail = (n_terms as f64).powf(1.0 - s.sigma) / (s.sigma - 1.0);
    let phase = 4.0 + s.t.abs() * (n_terms as f64).ln().max(1.0);
    Ok(EvalResult {
        value: sum.total(),
        err_bound: tail + 2.0 * f64::EPSILON * phase * mag,
        n_cutoff: n_terms,
        extra_terms: 0,
    })
}

/// Π_{p ≤ p_max} (1 − p^{-s})^{-1}.
pub fn euler_product_partial(s: ComplexPoint, p_max: u64, table: &ArithTable) -> Result<Complex64> {
    if !(s.sigma > 1.0) {
        return Err(Error::Domain(format!("Euler product needs sigma > 1, got {s}")));
    }
    if p_max > table.limit() {
        return Err(Error::Range { x: p_max as f64, limit: table.limit() });
    }
    let z = s.to_complex();
    let one = Complex64::new(1.0, 0.0);
    let mut prod = one;
    for p in table.primes_up_to(p_max) {
        prod /= one - power_neg(z, (p as f64).ln());
    }
    Ok(prod)
}

/// |ζ(1−s) − 2(2π)^{-s} Γ(s) cos(πs/2) ζ(s)| for 0 < σ < 1.
pub fn functional_equation_residual(s: ComplexPoint) -> Result<f64> {
    if !(s.sigma > 0.0 && s.sigma < 1.0) {
        return Err(Error::Domain(format!("functional equation check needs 0 < sigma < 1, got {s}")));
    }
    let z = s.to_complex();
    let reflected = ComplexPoint::new(1.0 - s.sigma, -s.t);
    let lhs = zeta_with_tolerance(reflected, 1e-14)?.value;
    let zs = zeta_with_tolerance(s, 1e-14)?.value;
    let rhs = 2.0 * Complex64::new(2.0 * PI, 0.0).powc(-z) * gamma(z)? * (z * PI / 2.0).cos() * zs;
    Ok((lhs - rhs).norm())
}

/// ζ(1−s) predicted from ζ(s) by the functional equation (any s where Γ and ζ are available).
pub fn functional_equation_rhs(s: ComplexPoint) -> Result<Complex64> {
    let z = s.to_complex();
    let zs = zeta(s)?.value;
    Ok(2.0 * Complex64::new(2.0 * PI, 0.0).powc(-z) * gamma(z)? * (z * PI / 2.0).cos() * zs)
}

/// Outcome of the Hurwitz-formula diagnostic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HurwitzResidual {
    /// ζ(1−s, a) extrapolated from points with Re(1−s) > 0.
    pub lhs: Complex64,
    /// Γ(s)/(2π)^s (e^{-πis/2}F(a,s) + e^{πis/2}F(1−a,s)) evaluated directly.
    pub rhs: Complex64,
    pub residual: f64,
    /// Difference between the two highest extrapolation orders.
    pub extrapolation_spread: f64,
}

const HURWITZ_NODES: usize = 12;
const HURWITZ_TERMS: u64 = 200_000;

/// Diagnostic for Hurwitz's formula at σ > 1, a ∈ (0, 1).
///
/// The right side is summed directly. The left side ζ(1−s, a) has
/// Re(1−s) < 0, outside the evaluator's half-plane, so it is obtained by
/// polynomial (Neville) extrapolation in σ from samples at σ' = 1 − ε_j,
/// ε_j = 0.05 j. A divergent extrapolation is reported as a domain error.
pub fn hurwitz_formula_residual(a: f64, s: ComplexPoint) -> Result<f64> {
    Ok(hurwitz_formula_diagnostic(a, s)?.residual)
}

pub fn hurwitz_formula_diagnostic(a: f64, s: ComplexPoint) -> Result<HurwitzResidual> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::Domain(format!("Hurwitz formula check needs 0 < a < 1, got {a}")));
    }
    if !(s.sigma > 1.0) {
        return Err(Error::Domain(format!("Hurwitz formula check needs sigma > 1, got {s}")));
    }
    let z = s.to_complex();
    let i = Complex64::new(0.0, 1.0);
    let f_a = periodic_zeta(a, s, HURWITZ_TERMS)?.value;
    let f_ma = periodic_zeta(1.0 - a, s, HURWITZ_TERMS)?.value;
    let rhs = gamma(z)? / Complex64::new(2.0 * PI, 0.0).powc(z)
        * ((-i * PI * z / 2.0).exp() * f_a + (i * PI * z / 2.0).exp() * f_ma);

    let mut xs = Vec::with_capacity(HURWITZ_NODES);
    let mut ys = Vec::with_capacity(HURWITZ_NODES);
    for j in 1..=HURWITZ_NODES {
        let sigma_j = 1.0 - 0.05 * j as f64;
        let arg = ComplexPoint::new(1.0 - sigma_j, -s.t);
        xs.push(sigma_j);
        ys.push(hurwitz_zeta_auto(arg, a)?.value);
    }
    let (lhs, spread) = neville(&xs, &ys, s.sigma);
    if !lhs.re.is_finite() || !lhs.im.is_finite() || spread > 1e-2 * lhs.norm().max(1.0) {
        return Err(Error::Domain(format!(
            "extrapolation of zeta(1-s, a) diverges at s = {s} (spread {spread:e})"
        )));
    }
    Ok(HurwitzResidual { lhs, rhs, residual: (lhs - rhs).norm(), extrapolation_spread: spread })
}

/// Neville interpolation at `x`; returns the value and the change between
/// the last two orders.
fn neville(xs: &[f64], ys: &[Complex64], x: f64) -> (Complex64, f64) {
    let n = xs.len();
    let mut p = ys.to_vec();
    let mut prev_top = p[0];
    let mut spread = f64::INFINITY;
    for m in 1..n {
        for i in 0..n - m {
            p[i] = ((x - xs[i + m]) * p[i] + (xs[i] - x) * p[i + 1]) / (xs[i] - xs[i + m]);
        }
        spread = (p[0] - prev_top).norm();
        prev_top = p[0];
    }
    (p[0], spread)
}

/// Hardy's Z(t) = e^{iθ(t)} ζ(1/2 + it), real for real t. The phase
/// e^{iθ(t)} is taken from Γ(1/4 + it/2)/|Γ(1/4 + it/2)| · π^{-it/2}, which
/// needs no branch of log Γ.
pub fn hardy_z(t: f64) -> Result<f64> {
    let g = gamma(Complex64::new(0.25, t / 2.0))?;
    let rot = g / g.norm() * Complex64::from_polar(1.0, -t / 2.0 * PI.ln());
    let zv = zeta_with_tolerance(ComplexPoint::new(0.5, t), 1e-14)?.value;
    Ok((rot * zv).re)
}

/// Bisects a sign change of Z(t) in [t_lo, t_hi] down to width `tol`.
pub fn locate_zero(t_lo: f64, t_hi: f64, tol: f64) -> Result<f64> {
    let (mut lo, mut hi) = (t_lo, t_hi);
    let mut z_lo = hardy_z(lo)?;
    let z_hi = hardy_z(hi)?;
    if z_lo.signum() == z_hi.signum() {
        return Err(Error::Evaluation(format!("no sign change of Z on [{t_lo}, {t_hi}]")));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let z_mid = hardy_z(mid)?;
        if z_mid.signum() == z_lo.signum() {
            lo = mid;
            z_lo = z_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
