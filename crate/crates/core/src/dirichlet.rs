//! Finite Dirichlet-series coefficient algebra.
//!
//! A [`CoeffTable`] holds f(1..=n_max). Convolution and inversion enumerate
//! multiples harmonically, so both cost O(n_max log n_max).

use num_complex::Complex64;
use serde::Serialize;

use crate::arith::ArithTable;
use crate::error::{Error, Result};
use crate::summation::ComplexNeumaier;
use crate::zeta::{zeta, EvalResult};
use crate::ComplexPoint;

#[derive(Debug, Clone, PartialEq)]
pub struct CoeffTable {
    coeffs: Vec<Complex64>,
}

impl CoeffTable {
    /// Wraps f(1), f(2), … as given.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Parameter("coefficient table needs n_max >= 1".into()));
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::Parameter("coefficients must be finite".into()));
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    /// Builds f(n) for n = 1..=n_max from a closure.
    pub fn from_fn(n_max: usize, f: impl FnMut(usize) -> Complex64) -> Result<Self> {
        Self::new((1..=n_max).map(f).collect())
    }

    /// The convolution identity: 1 at n = 1, 0 elsewhere.
    pub fn unit(n_max: usize) -> Result<Self> {
        Self::from_fn(n_max, |n| Complex64::new(if n == 1 { 1.0 } else { 0.0 }, 0.0))
    }

    /// The constant function 1, whose series is ζ(s).
    pub fn ones(n_max: usize) -> Result<Self> {
        Self::from_fn(n_max, |_| Complex64::new(1.0, 0.0))
    }

    pub fn mobius(table: &ArithTable, n_max: usize) -> Result<Self> {
        check_table(table, n_max)?;
        Self::from_fn(n_max, |n| Complex64::new(table.mobius()[n] as f64, 0.0))
    }

    pub fn mangoldt(table: &ArithTable, n_max: usize) -> Result<Self> {
        check_table(table, n_max)?;
        Self::from_fn(n_max, |n| Complex64::new(table.mangoldt()[n], 0.0))
    }

    pub fn n_max(&self) -> usize {
        self.coeffs.len()
    }

    /// f(n), 1-based.
    pub fn get(&self, n: usize) -> Complex64 {
        self.coeffs[n - 1]
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// f′(n) = f(n) log n.
    pub fn log_weighted(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| c * ((i + 1) as f64).ln())
            .collect();
        Self { coeffs }
    }

    /// Largest |f(n) − g(n)| over the common range.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        if self.n_max() != other.n_max() {
            return Err(Error::SizeMismatch(self.n_max(), other.n_max()));
        }
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

fn check_table(table: &ArithTable, n_max: usize) -> Result<()> {
    if n_max as u64 > table.limit() {
        return Err(Error::Range { x: n_max as f64, limit: table.limit() });
    }
    Ok(())
}

/// (f ∗ g)(n) = Σ_{d|n} f(d) g(n/d).
pub fn convolve(f: &CoeffTable, g: &CoeffTable) -> Result<CoeffTable> {
    let n = f.n_max();
    if g.n_max() != n {
        return Err(Error::SizeMismatch(n, g.n_max()));
    }
    let mut acc = vec![ComplexNeumaier::default(); n];
    for d in 1..=n {
        let fd = f.get(d);
        if fd == Complex64::new(0.0, 0.0) {
            continue;
        }
        for (q, m) in (d..=n).step_by(d).enumerate() {
            acc[m - 1].add(fd * g.coeffs[q]);
        }
    }
    Ok(CoeffTable { coeffs: acc.iter().map(ComplexNeumaier::total).collect() })
}

/// f⁻¹ with f⁻¹(1) = 1/f(1) and f⁻¹(n) = −(1/f(1)) Σ_{d|n, d<n} f(n/d) f⁻¹(d).
pub fn dirichlet_inverse(f: &CoeffTable) -> Result<CoeffTable> {
    let n = f.n_max();
    let f1 = f.get(1);
    if f1 == Complex64::new(0.0, 0.0) {
        return Err(Error::Singular);
    }
    let mut inv = vec![Complex64::new(0.0, 0.0); n];
    let mut acc = vec![ComplexNeumaier::default(); n];
    for d in 1..=n {
        // every proper divisor of d has already pushed its contribution
        let v = if d == 1 { 1.0 / f1 } else { -acc[d - 1].total() / f1 };
        inv[d - 1] = v;
        for (q, m) in (2 * d..=n).step_by(d).enumerate() {
            acc[m - 1].add(f.coeffs[q + 1] * v);
        }
    }
    Ok(CoeffTable { coeffs: inv })
}

/// Coefficients of −F′/F, namely (f′ ∗ f⁻¹)(n).
pub fn log_derivative_coeffs(f: &CoeffTable) -> Result<CoeffTable> {
    convolve(&f.log_weighted(), &dirichlet_inverse(f)?)
}

/// G(s) = Σ_{2≤n≤n_max} Λ(n)/log n · n^{-s} for σ > 1, with the tail bound
/// Σ_{n>n_max} n^{-σ} ≤ n_max^{1-σ}/(σ-1) (using Λ(n)/log n ≤ 1).
pub fn g_series(s: ComplexPoint, n_max: u64, table: &ArithTable) -> Result<EvalResult> {
    if !(s.sigma > 1.0) {
        return Err(Error::Domain(format!("G(s) needs sigma > 1, got {s}")));
    }
    if n_max < 1 {
        return Err(Error::Parameter("n_max must be at least 1".into()));
    }
    if n_max > table.limit() {
        return Err(Error::Range { x: n_max as f64, limit: table.limit() });
    }
    let lambda = table.mangoldt();
    let mut sum = ComplexNeumaier::default();
    let mut mag = 0.0;
    for n in 2..=n_max {
        let l = lambda[n as usize];
        if l == 0.0 {
            continue;
        }
        let ln_n = (n as f64).ln();
        let term = Complex64::from_polar(l / ln_n * (-s.sigma * ln_n).exp(), -s.t * ln_n);
        mag += term.norm();
        sum.add(term);
    }
    let tail = (n_max as f64).powf(1.0 - s.sigma) / (s.sigma - 1.0);
    let phase = 4.0 + s.t.abs() * (n_max as f64).ln().max(1.0);
    Ok(EvalResult {
        value: sum.total(),
        err_bound: tail + 2.0 * f64::EPSILON * phase * mag,
        n_cutoff: n_max,
        extra_terms: 0,
    })
}

/// Comparison of e^{G(s)} against ζ(s).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExpIdentityCheck {
    pub s: ComplexPoint,
    pub exp_g: Complex64,
    pub zeta: Complex64,
    pub deviation: f64,
    /// |e^{G_N}|(e^{b} − 1) + ζ error bound, b the G error bound.
    pub bound: f64,
}

impl ExpIdentityCheck {
    pub fn holds(&self) -> bool {
        self.deviation <= self.bound
    }
}

pub fn exp_identity_check(s: ComplexPoint, n_max: u64, table: &ArithTable) -> Result<ExpIdentityCheck> {
    let g = g_series(s, n_max, table)?;
    let z = zeta(s)?;
    let exp_g = g.value.exp();
    Ok(ExpIdentityCheck {
        s,
        exp_g,
        zeta: z.value,
        deviation: (exp_g - z.value).norm(),
        bound: exp_g.norm() * g.err_bound.exp_m1() + z.err_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn identity_element() {
        let e = CoeffTable::unit(50).unwrap();
        assert_eq!(convolve(&e, &e).unwrap(), e);
    }

    #[test]
    fn divisor_count() {
        let one = CoeffTable::ones(100).unwrap();
        let d = convolve(&one, &one).unwrap();
        assert_eq!(d.get(12), c(6.0));
        assert_eq!(d.get(1), c(1.0));
        assert_eq!(d.get(97), c(2.0));
        for n in 1..=100usize {
            let brute = (1..=n).filter(|k| n % k == 0).count() as f64;
            assert_eq!(d.get(n).re, brute);
        }
    }

    #[test]
    fn ones_times_mobius_is_unit() {
        let table = ArithTable::build(100).unwrap();
        let mu = CoeffTable::mobius(&table, 100).unwrap();
        let one = CoeffTable::ones(100).unwrap();
        let e = convolve(&one, &mu).unwrap();
        assert_eq!(e, CoeffTable::unit(100).unwrap());
    }

    #[test]
    fn inverse_of_ones_is_mobius() {
        let n = 10_000;
        let table = ArithTable::build(n as u64).unwrap();
        let inv = dirichlet_inverse(&CoeffTable::ones(n).unwrap()).unwrap();
        let mu = CoeffTable::mobius(&table, n).unwrap();
        assert_eq!(inv.max_abs_diff(&mu).unwrap(), 0.0);
        let e = CoeffTable::unit(n).unwrap();
        assert_eq!(dirichlet_inverse(&e).unwrap(), e);
    }

    #[test]
    fn log_derivative_of_ones_is_mangoldt() {
        let n = 10_000;
        let table = ArithTable::build(n as u64).unwrap();
        let lam = log_derivative_coeffs(&CoeffTable::ones(n).unwrap()).unwrap();
        assert_eq!(lam.get(1), c(0.0));
        assert!((lam.get(8).re - 2f64.ln()).abs() < 1e-12);
        assert!(lam.get(6).norm() < 1e-12);
        assert!(lam.get(12).norm() < 1e-12);
        let sieve = CoeffTable::mangoldt(&table, n).unwrap();
        assert!(lam.max_abs_diff(&sieve).unwrap() < 1e-9);
    }

    #[test]
    fn errors() {
        let a = CoeffTable::ones(5).unwrap();
        let b = CoeffTable::ones(6).unwrap();
        assert_eq!(convolve(&a, &b), Err(Error::SizeMismatch(5, 6)));
        let z = CoeffTable::from_real(&[0.0, 1.0, 2.0]).unwrap();
        assert_eq!(dirichlet_inverse(&z), Err(Error::Singular));
        assert_eq!(log_derivative_coeffs(&z), Err(Error::Singular));
        assert!(CoeffTable::new(vec![]).is_err());
        let table = ArithTable::build(10).unwrap();
        assert!(g_series(ComplexPoint::new(1.0, 2.0), 10, &table).is_err());
        assert!(g_series(ComplexPoint::new(2.0, 0.0), 11, &table).is_err());
    }

    #[test]
    fn g_series_values() {
        let table = ArithTable::build(1_000_000).unwrap();
        let g2 = g_series(ComplexPoint::new(2.0, 0.0), 1_000_000, &table).unwrap();
        assert!(g2.value.re > 0.0);
        assert_eq!(g2.value.im, 0.0);
        let chk = exp_identity_check(ComplexPoint::new(2.0, 0.0), 1_000_000, &table).unwrap();
        assert!(chk.holds(), "{chk:?}");
        // the leading term 2^{-σ} dominates for large σ
        let g40 = g_series(ComplexPoint::new(40.0, 0.0), 1000, &table).unwrap();
        assert!((g40.value.re / 2f64.powi(-40) - 1.0).abs() < 1e-6);
    }
}
