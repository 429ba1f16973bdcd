use std::f64::consts::{E, PI};
use std::sync::OnceLock;

use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zetalab::contour::kernel_integral;
use zetalab::dirichlet::{convolve, dirichlet_inverse, log_derivative_coeffs, CoeffTable};
use zetalab::zeta::{default_cutoff, zeta, zeta_em, zeta_prime_em};
use zetalab::{ArithTable, ComplexPoint, LineQuadSpec};

fn table() -> &'static ArithTable {
    static T: OnceLock<ArithTable> = OnceLock::new();
    T.get_or_init(|| ArithTable::build(100_000).unwrap())
}

/// ∫₁ˣ ψ(u) du summed over the unit pieces where ψ is constant.
fn psi_integral(t: &ArithTable, x: f64) -> f64 {
    let top = x.floor() as u64;
    let mut acc = 0.0;
    for m in 1..top {
        acc += t.chebyshev_psi(m as f64).unwrap();
    }
    acc + t.chebyshev_psi(top as f64).unwrap() * (x - top as f64)
}

#[test]
fn psi1_matches_piecewise_integral() {
    let t = table();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let x: f64 = rng.gen_range(1.0..20_000.0);
        let a = t.psi1(x).unwrap();
        let b = psi_integral(t, x);
        assert!((a - b).abs() <= 1e-9 * b.abs().max(1.0), "x={x}: {a} vs {b}");
    }
}

#[test]
fn summatory_functions_monotone() {
    let t = table();
    let mut prev = (0.0, 0.0, 0.0, 0u64);
    for i in 0..=2000 {
        let x = 1.0 + i as f64 * 49.99;
        let v = t.chebyshev_values(x).unwrap();
        assert!(v.psi >= prev.0 && v.theta >= prev.1 && v.psi1 >= prev.2 && v.pi >= prev.3);
        assert!(v.theta <= v.psi);
        if x >= 2.0 {
            assert!(v.pi as f64 * 2f64.ln() <= v.psi + 1.0);
        }
        prev = (v.psi, v.theta, v.psi1, v.pi);
    }
}

#[test]
fn ratio_at_one_million() {
    let t = ArithTable::build(1_000_000).unwrap();
    let x = 1e6;
    let v = t.chebyshev_values(x).unwrap();
    assert!((v.psi / x - 1.0).abs() < 0.03);
    assert!((2.0 * v.psi1 / (x * x) - 1.0).abs() < 0.02);
    let r = v.theta / (v.pi as f64 * x.ln());
    assert!((r - 1.0).abs() < 0.1);
    assert!(v.theta <= v.psi);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn psi_via_theta_agrees(x in 1.0f64..100_000.0) {
        let t = table();
        let a = t.psi_via_theta(x).unwrap();
        let b = t.chebyshev_psi(x).unwrap();
        prop_assert!((a - b).abs() <= 1e-9 * b.max(1.0));
    }

    #[test]
    fn tauberian_inequality_holds(x in 1.0f64..40_000.0, beta in 1.0001f64..2.5) {
        prop_assert!(table().tauberian_inequality_check(x, beta).unwrap());
    }

    #[test]
    fn zeta_conjugate_symmetric(sigma in 0.05f64..4.0, t in 0.01f64..60.0) {
        let a = zeta(ComplexPoint::new(sigma, t)).unwrap().value;
        let b = zeta(ComplexPoint::new(sigma, -t)).unwrap().value;
        prop_assert!((a - b.conj()).norm() <= 1e-12 * a.norm());
    }

    #[test]
    fn no_zeros_right_of_one(sigma in 1.1f64..3.0, t in -50.0f64..50.0) {
        prop_assert!(zeta(ComplexPoint::new(sigma, t)).unwrap().value.norm() > 0.0);
    }

    #[test]
    fn bound_covers_refined_value(sigma in 0.1f64..3.0, t in -60.0f64..60.0, n in 1u64..40) {
        let s = ComplexPoint::new(sigma, t);
        prop_assume!((s.to_complex() - 1.0).norm() > 1e-3);
        let coarse = zeta_em(s, n, 0).unwrap();
        let fine = zeta_em(s, 4 * default_cutoff(s), 0).unwrap();
        prop_assert!((coarse.value - fine.value).norm() <= coarse.err_bound + fine.err_bound);
    }
}

#[test]
fn derivative_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let h = 1e-5;
    for _ in 0..50 {
        let sigma = rng.gen_range(0.5..3.0);
        let t = rng.gen_range(-50.0..50.0);
        let s = ComplexPoint::new(sigma, t);
        if (s.to_complex() - 1.0).norm() < 0.05 {
            continue;
        }
        let n = default_cutoff(s);
        let fwd = zeta_em(ComplexPoint::new(sigma + h, t), n, 0).unwrap().value;
        let bwd = zeta_em(ComplexPoint::new(sigma - h, t), n, 0).unwrap().value;
        let fd = (fwd - bwd) / (2.0 * h);
        let d = zeta_prime_em(s, n, 0).unwrap().value;
        assert!((fd - d).norm() < 1e-6, "s={s}: {fd} vs {d}");
    }
}

fn random_table(rng: &mut ChaCha8Rng, n: usize, f1: Complex64) -> CoeffTable {
    CoeffTable::from_fn(n, |k| {
        if k == 1 {
            f1
        } else {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        }
    })
    .unwrap()
}

fn rel_diff(a: &CoeffTable, b: &CoeffTable) -> f64 {
    let scale = a.coeffs().iter().map(|c| c.norm()).fold(1.0, f64::max);
    a.max_abs_diff(b).unwrap() / scale
}

#[test]
fn convolution_commutative_and_associative() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let f = random_table(&mut rng, 256, Complex64::new(0.3, 0.1));
        let g = random_table(&mut rng, 256, Complex64::new(-1.0, 0.5));
        let h = random_table(&mut rng, 256, Complex64::new(0.7, 0.0));
        let fg = convolve(&f, &g).unwrap();
        assert!(rel_diff(&fg, &convolve(&g, &f).unwrap()) < 1e-12);
        let left = convolve(&fg, &h).unwrap();
        let right = convolve(&f, &convolve(&g, &h).unwrap()).unwrap();
        assert!(rel_diff(&left, &right) < 1e-12);
    }
}

#[test]
fn inverse_is_two_sided_and_involutive() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let unit = CoeffTable::unit(512).unwrap();
    for i in 0..100 {
        let mag = rng.gen_range(0.5..2.0);
        let arg = rng.gen_range(0.0..2.0 * PI);
        let f = random_table(&mut rng, 512, Complex64::from_polar(mag, arg));
        let inv = dirichlet_inverse(&f).unwrap();
        assert!(convolve(&f, &inv).unwrap().max_abs_diff(&unit).unwrap() < 1e-9, "case {i}");
        if i < 10 {
            let g = random_table(&mut rng, 512, Complex64::new(1.0, 0.0));
            let back = dirichlet_inverse(&dirichlet_inverse(&g).unwrap()).unwrap();
            assert!(rel_diff(&back, &g) < 1e-9);
        }
    }
}

#[test]
fn mangoldt_from_log_derivative() {
    let n = 10_000;
    let lam = log_derivative_coeffs(&CoeffTable::ones(n).unwrap()).unwrap();
    let sieve = CoeffTable::mangoldt(table(), n).unwrap();
    assert!(lam.max_abs_diff(&sieve).unwrap() < 1e-9);
}

#[test]
fn exp_g_matches_zeta() {
    let t = ArithTable::build(1_000_000).unwrap();
    for s in [
        ComplexPoint::new(2.0, 0.0),
        ComplexPoint::new(3.0, 0.0),
        ComplexPoint::new(2.0, 5.0),
        ComplexPoint::new(1.5, 1.0),
    ] {
        let chk = zetalab::dirichlet::exp_identity_check(s, 1_000_000, &t).unwrap();
        assert!(chk.holds(), "{chk:?}");
    }
}

#[test]
fn kernel_error_shrinks_with_height() {
    for k in [1u32, 2] {
        for u in [0.25, 0.5, 0.75, 2.0] {
            let mut prev = f64::INFINITY;
            for t_max in [1e2, 1e3, 1e4] {
                let r = kernel_integral(u, k, &LineQuadSpec::new(2.0, t_max, 0.1)).unwrap();
                let dev = r.deviation.unwrap();
                assert!(dev < prev, "u={u} k={k} T={t_max}");
                prev = dev;
            }
        }
    }
}

#[test]
fn first_zero_scan_near_origin() {
    // |ζ(1+it)| stays away from zero just above t = e
    let r = zetalab::nonvanishing_scan(E, 30.0, 300).unwrap();
    assert!(r.extremum > 0.1);
}
