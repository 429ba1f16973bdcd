//! Named numerical checks, one per acceptance criterion. `certify` runs them
//! all; the acceptance test target runs them at full size with timing.

use std::f64::consts::{E, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use zetalab::bounds::{
    check_341, growth_scan, inverse_zeta_scan, nonvanishing_scan, pnt_ratio_table, refinement_ratio, scan_341,
    GridSpec,
};
use zetalab::contour::{kernel_integral, mellin_psi1_direct, reconstruct_psi1, HLine, DEFAULT_H_ENVELOPE};
use zetalab::dirichlet::{exp_identity_check, log_derivative_coeffs, CoeffTable};
use zetalab::zeta::{default_cutoff, functional_equation_residual, locate_zero, zeta, zeta_em, zeta_prime_em};
use zetalab::{ArithTable, ComplexPoint, LineQuadSpec};

use crate::emit::{fmt_g15, to_json_value};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Quick,
    Full,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub summary: String,
    pub details: Value,
}

impl CheckOutcome {
    pub fn line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        format!("[{status}] {:02} {}: {}", self.id, self.name, self.summary)
    }
}

pub const CHECK_NAMES: [&str; 14] = [
    "basel",
    "euler_maclaurin_derivative",
    "functional_equation",
    "first_zero",
    "mangoldt_from_mobius_and_log",
    "zeta_equals_exp_g",
    "mellin_kernel",
    "perron_reconstruction",
    "three_four_one",
    "nonvanishing_on_one_line",
    "growth_and_inverse_constants",
    "pnt_ratios",
    "tauberian_differencing",
    "determinism",
];

fn outcome(id: u8, passed: bool, summary: String, details: Value) -> CheckOutcome {
    CheckOutcome { id, name: CHECK_NAMES[id as usize - 1], passed, summary, details }
}

fn g(x: f64) -> String {
    fmt_g15(x)
}

/// Runs check `id` (1..=14).
pub fn run_check(id: u8, scale: Scale) -> Result<CheckOutcome, CliError> {
    match id {
        1 => basel(),
        2 => em_derivative(),
        3 => functional_equation(),
        4 => first_zero(),
        5 => mangoldt_identity(),
        6 => exp_g(),
        7 => mellin_kernel(scale),
        8 => perron(scale),
        9 => three_four_one(scale),
        10 => nonvanishing(scale),
        11 => growth_inverse(scale),
        12 => pnt_ratios(),
        13 => tauberian(),
        14 => determinism(None),
        _ => Err(CliError::Usage(format!("no check with id {id}"))),
    }
}

pub fn run_all(scale: Scale) -> Result<Vec<CheckOutcome>, CliError> {
    let mut out = (1..=13).map(|id| run_check(id, scale)).collect::<Result<Vec<_>, _>>()?;
    let first = match scale {
        Scale::Quick => Some(serialise(&out)?),
        Scale::Full => None,
    };
    out.push(determinism(first)?);
    Ok(out)
}

fn basel() -> Result<CheckOutcome, CliError> {
    let r = zeta_em(ComplexPoint::new(2.0, 0.0), 30, 0)?;
    let dev = (r.value.re - PI * PI / 6.0).abs() + r.value.im.abs();
    Ok(outcome(
        1,
        dev <= 1e-9,
        format!("|zeta(2) - pi^2/6| = {} (err_bound {})", g(dev), g(r.err_bound)),
        json!({ "value": r.value.re, "deviation": dev, "err_bound": r.err_bound }),
    ))
}

fn em_derivative() -> Result<CheckOutcome, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let h = 1e-5;
    let mut worst: f64 = 0.0;
    let mut worst_at = ComplexPoint::new(0.0, 0.0);
    let mut count = 0;
    while count < 50 {
        let s = ComplexPoint::new(rng.gen_range(0.5..3.0), rng.gen_range(-50.0..50.0));
        if (s.to_complex() - 1.0).norm() < 0.05 {
            continue;
        }
        let n = default_cutoff(s);
        let fwd = zeta_em(ComplexPoint::new(s.sigma + h, s.t), n, 0)?.value;
        let bwd = zeta_em(ComplexPoint::new(s.sigma - h, s.t), n, 0)?.value;
        let d = zeta_prime_em(s, n, 0)?.value;
        let diff = ((fwd - bwd) / (2.0 * h) - d).norm();
        if diff > worst {
            worst = diff;
            worst_at = s;
        }
        count += 1;
    }
    Ok(outcome(
        2,
        worst < 1e-6,
        format!("max |zeta' - central difference| over 50 points = {}", g(worst)),
        json!({ "points": count, "max_difference": worst, "at": worst_at }),
    ))
}

fn functional_equation() -> Result<CheckOutcome, CliError> {
    let mut worst: f64 = 0.0;
    let mut worst_t = 0.0;
    for j in 0..20 {
        let t = -20.0 + 40.0 * j as f64 / 19.0;
        let r = functional_equation_residual(ComplexPoint::new(0.5, t))?;
        if r > worst {
            worst = r;
            worst_t = t;
        }
    }
    Ok(outcome(
        3,
        worst < 1e-6,
        format!("max residual over 20 points on sigma = 0.5 = {}", g(worst)),
        json!({ "points": 20, "max_residual": worst, "at_t": worst_t }),
    ))
}

fn first_zero() -> Result<CheckOutcome, CliError> {
    let r = zeta(ComplexPoint::new(0.5, 14.134_725))?;
    let m = r.value.norm();
    let t0 = locate_zero(14.0, 14.3, 1e-10)?;
    Ok(outcome(
        4,
        m <= 1e-3,
        format!("|zeta(0.5 + 14.134725i)| = {}, sign change of Z at t = {}", g(m), g(t0)),
        json!({ "modulus": m, "err_bound": r.err_bound, "zero_t": t0 }),
    ))
}

fn mangoldt_identity() -> Result<CheckOutcome, CliError> {
    let n = 10_000;
    let table = ArithTable::build(n as u64)?;
    let lam = log_derivative_coeffs(&CoeffTable::ones(n)?)?;
    let dev = lam.max_abs_diff(&CoeffTable::mangoldt(&table, n)?)?;
    Ok(outcome(
        5,
        dev <= 1e-9,
        format!("max |(log * mu)(n) - Lambda(n)| for n <= {n} = {}", g(dev)),
        json!({ "limit": n, "max_abs_deviation": dev }),
    ))
}

fn exp_g() -> Result<CheckOutcome, CliError> {
    let n_max = 1_000_000;
    let table = ArithTable::build(n_max)?;
    let mut ok = true;
    let mut rows = Vec::new();
    let mut parts = Vec::new();
    for s in [ComplexPoint::new(2.0, 0.0), ComplexPoint::new(3.0, 0.0), ComplexPoint::new(2.0, 5.0)] {
        let c = exp_identity_check(s, n_max, &table)?;
        ok &= c.holds();
        parts.push(format!("s={s}: {} <= {}", g(c.deviation), g(c.bound)));
        rows.push(to_json_value(&c)?);
    }
    Ok(outcome(6, ok, parts.join("; "), json!({ "n_max": n_max, "points": rows })))
}

fn mellin_kernel(scale: Scale) -> Result<CheckOutcome, CliError> {
    let t_max = match scale {
        Scale::Quick => 1e3,
        Scale::Full => 1e4,
    };
    let mut ok = true;
    let mut rows = Vec::new();
    let mut worst_ratio: f64 = 0.0;
    for k in [1u32, 2] {
        let tol: f64 = if k == 1 { 1e-2 } else { 1e-4 };
        for u in [0.25, 0.5, 0.75, 2.0, 3.0] {
            let a = kernel_integral(u, k, &LineQuadSpec::new(2.0, t_max, 0.1))?;
            let b = kernel_integral(u, k, &LineQuadSpec::new(2.0, 2.0 * t_max, 0.1))?;
            let (da, db) = (a.deviation.unwrap_or(f64::NAN), b.deviation.unwrap_or(f64::NAN));
            let within = da <= tol.max(a.truncation_tail_bound);
            let shrinks = db < da;
            ok &= within && shrinks;
            worst_ratio = worst_ratio.max(db / da);
            rows.push(json!({ "u": u, "k": k, "error": da, "error_doubled": db,
                "tail_bound": a.truncation_tail_bound, "within": within, "shrinks": shrinks }));
        }
    }
    Ok(outcome(
        7,
        ok,
        format!("10 kernels at T = {}: all within tolerance, worst error ratio on doubling {}", g(t_max), g(worst_ratio)),
        json!({ "c": 2.0, "T": t_max, "cases": rows }),
    ))
}

fn perron(scale: Scale) -> Result<CheckOutcome, CliError> {
    let (t1, t2) = match scale {
        Scale::Quick => (1250.0, 2500.0),
        Scale::Full => (5000.0, 10000.0),
    };
    let table = ArithTable::build(1000)?;
    let xs = [10.0, 50.0, 100.0];
    let dt = LineQuadSpec::reconstruct_step(100.0);
    let line = HLine::sample(1.0, t2, t1, dt)?;
    let mut ok = true;
    let mut rows = Vec::new();
    let mut worst_rel: f64 = 0.0;
    for &x in &xs {
        let a = line.reconstruct(x, t1, &table, DEFAULT_H_ENVELOPE)?;
        let b = line.reconstruct(x, t2, &table, DEFAULT_H_ENVELOPE)?;
        let within = a.within(0.02);
        let shrinks = b.deviation < a.deviation;
        // the integrand's real part is even and its imaginary part odd
        let parity = a.imag_part.abs() <= 1e-8 * a.estimate.abs();
        ok &= within && shrinks && parity;
        let lhs = a.reference.unwrap_or(f64::NAN);
        worst_rel = worst_rel.max(a.deviation.unwrap_or(f64::NAN) / lhs.abs());
        rows.push(json!({ "x": x, "c": 1.0, "lhs": lhs, "estimate": a.estimate,
            "deviation": a.deviation, "deviation_doubled": b.deviation, "imag_part": a.imag_part,
            "discretization_estimate": a.discretization_estimate, "tail_bound": a.truncation_tail_bound,
            "within": within, "shrinks": shrinks }));
    }
    let mut off = Vec::new();
    for c in [1.5, 2.0] {
        let spec = LineQuadSpec::new(c, t1, LineQuadSpec::reconstruct_step(10.0));
        let r = reconstruct_psi1(10.0, &spec, &table)?;
        let d = mellin_psi1_direct(10.0, c, &LineQuadSpec::new(c, 2000.0, 0.25), &table)?;
        ok &= r.within(0.02);
        worst_rel = worst_rel.max(r.deviation.unwrap_or(f64::NAN) / r.reference.unwrap_or(f64::NAN).abs());
        off.push(json!({ "x": 10.0, "c": c, "estimate": r.estimate, "deviation": r.deviation,
            "tail_bound": r.truncation_tail_bound, "direct_estimate": d.estimate,
            "direct_reference": d.reference, "direct_deviation": d.deviation }));
    }
    Ok(outcome(
        8,
        ok,
        format!(
            "x in {{10, 50, 100}} at T = {} and {}: worst relative deviation {}, all shrink on doubling",
            g(t1),
            g(t2),
            g(worst_rel)
        ),
        json!({ "T": t1, "T_doubled": t2, "dt": line.dt, "line": rows, "off_line": off }),
    ))
}

fn three_four_one(scale: Scale) -> Result<CheckOutcome, CliError> {
    let n = match scale {
        Scale::Quick => 50,
        Scale::Full => 200,
    };
    let r = scan_341(GridSpec::new(1.01, 2.0, E, 50.0, n, n))?;
    Ok(outcome(
        9,
        check_341(&r),
        format!("min of zeta^3(s)|zeta(s+it)|^4|zeta(s+2it)| on {n}x{n} grid = {}", g(r.extremum)),
        to_json_value(&r)?,
    ))
}

fn nonvanishing(scale: Scale) -> Result<CheckOutcome, CliError> {
    let n = match scale {
        Scale::Quick => 2000,
        Scale::Full => 10_000,
    };
    let r = nonvanishing_scan(E, 100.0, n)?;
    Ok(outcome(
        10,
        r.extremum > 1e-3,
        format!("min |zeta(1+it)| over {n} points in [e, 100] = {} at t = {}", g(r.extremum), g(r.arg_extremum.t)),
        to_json_value(&r)?,
    ))
}

fn growth_inverse(scale: Scale) -> Result<CheckOutcome, CliError> {
    let (t_max, n_sigma, n_t, n_inv) = match scale {
        Scale::Quick => (200.0, 4, 50, 500),
        Scale::Full => (1000.0, 8, 200, 4000),
    };
    let a = 1.0;
    let floor = 0.5f64.max(1.0 - a / f64::ln(t_max));
    let grid = GridSpec::new(floor, 2.0, E, t_max, n_sigma, n_t);
    let (z1, d1) = growth_scan(a, t_max, grid)?;
    let (z2, d2) = growth_scan(a, t_max, grid.refined())?;
    let (i1, l1) = inverse_zeta_scan(t_max, n_inv)?;
    let (i2, l2) = inverse_zeta_scan(t_max, 2 * n_inv)?;
    let pairs = [
        ("M_zeta", z1.empirical_constant, z2.empirical_constant),
        ("M_zeta_prime", d1.empirical_constant, d2.empirical_constant),
        ("M_inverse_zeta", i1.empirical_constant, i2.empirical_constant),
        ("M_log_derivative", l1.empirical_constant, l2.empirical_constant),
    ];
    let mut ok = true;
    let mut rows = Vec::new();
    let mut parts = Vec::new();
    for (name, c1, c2) in pairs {
        let finite = c1.is_finite() && c2.is_finite() && c1 > 0.0 && c2 > 0.0;
        let ratio = refinement_ratio(c1, c2);
        ok &= finite && ratio <= 1.5;
        parts.push(format!("{name} = {}", g(c2)));
        rows.push(json!({ "constant": name, "value": c1, "refined": c2, "ratio": ratio }));
    }
    Ok(outcome(
        11,
        ok,
        format!("{} (t <= {}), refinement ratios <= 1.5", parts.join(", "), g(t_max)),
        json!({ "A": a, "t_max": t_max, "constants": rows }),
    ))
}

fn pnt_ratios() -> Result<CheckOutcome, CliError> {
    let table = ArithTable::build(1_000_000)?;
    let t = pnt_ratio_table(&table, &[1e3, 1e4, 1e5, 1e6])?;
    let last = t.rows[t.rows.len() - 1];
    let ok = (last.psi_over_x - 1.0).abs() < 0.03
        && (last.psi1_ratio - 1.0).abs() < 0.02
        && (0.9..=1.0).contains(&last.theta_ratio)
        && t.trend_toward_one;
    Ok(outcome(
        12,
        ok,
        format!(
            "x = 1e6: psi/x = {}, 2psi1/x^2 = {}, theta/(pi log x) = {}",
            g(last.psi_over_x),
            g(last.psi1_ratio),
            g(last.theta_ratio)
        ),
        to_json_value(&t)?,
    ))
}

fn tauberian() -> Result<CheckOutcome, CliError> {
    let limit = 1_000_000u64;
    let table = ArithTable::build(limit)?;
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut ok = true;
    let mut min_margin = f64::INFINITY;
    for _ in 0..100 {
        let beta: f64 = rng.gen_range(1.0001..3.0);
        let x: f64 = rng.gen_range(1.0..limit as f64 / beta);
        ok &= table.tauberian_inequality_check(x, beta)?;
        let (lhs, rhs) = table.tauberian_sides(x, beta)?;
        min_margin = min_margin.min(lhs - rhs);
    }
    Ok(outcome(
        13,
        ok,
        format!("psi1(bx) - psi1(x) >= x(b-1)psi(x) at 100 random points, min margin {}", g(min_margin)),
        json!({ "samples": 100, "min_margin": min_margin }),
    ))
}

/// Re-runs checks 1–13 at quick size and compares the serialised results
/// with `first`, or with a second rerun when no earlier quick run exists.
fn determinism(first: Option<String>) -> Result<CheckOutcome, CliError> {
    let first = match first {
        Some(f) => f,
        None => serialise_quick()?,
    };
    let second = serialise_quick()?;
    let same = first == second;
    Ok(outcome(
        14,
        same,
        format!("two in-process runs of checks 1-13 {} ({} bytes)", if same { "identical" } else { "differ" }, first.len()),
        json!({ "bytes": first.len(), "identical": same }),
    ))
}

fn serialise_quick() -> Result<String, CliError> {
    let outcomes = (1..=13).map(|id| run_check(id, Scale::Quick)).collect::<Result<Vec<_>, _>>()?;
    serialise(&outcomes)
}

fn serialise(outcomes: &[CheckOutcome]) -> Result<String, CliError> {
    crate::emit::json_text(&outcomes)
}
