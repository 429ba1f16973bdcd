//! Python bindings for the zetalab numerics.

use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use zetalab_core::bounds::{check_341, nonvanishing_scan, pnt_ratio_table, scan_341, GridSpec, ScanReport};
use zetalab_core::contour::{kernel_closed_form, kernel_integral, reconstruct_psi1, LineQuadSpec, QuadReport};
use zetalab_core::dirichlet::{exp_identity_check, log_derivative_coeffs, CoeffTable};
use zetalab_core::zeta::{self, default_cutoff, EvalResult};
use zetalab_core::{ComplexPoint, Error};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Evaluation(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn pair(r: EvalResult) -> (Complex64, f64) {
    (r.value, r.err_bound)
}

fn quad_dict<'py>(py: Python<'py>, r: &QuadReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("estimate", r.estimate)?;
    d.set_item("truncation_tail_bound", r.truncation_tail_bound)?;
    d.set_item("discretization_estimate", r.discretization_estimate)?;
    d.set_item("evaluations", r.evaluations)?;
    d.set_item("imag_part", r.imag_part)?;
    d.set_item("reference", r.reference)?;
    d.set_item("deviation", r.deviation)?;
    Ok(d)
}

fn scan_dict<'py>(py: Python<'py>, r: &ScanReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("extremum", r.extremum)?;
    d.set_item("arg_extremum", (r.arg_extremum.sigma, r.arg_extremum.t))?;
    d.set_item("empirical_constant", r.empirical_constant)?;
    d.set_item("samples", r.samples)?;
    Ok(d)
}

/// ζ(σ+it) and its error bound. With `n` the cutoff is fixed, otherwise automatic.
#[pyfunction]
#[pyo3(signature = (sigma, t=0.0, n=None, extra=0))]
fn zeta_value(sigma: f64, t: f64, n: Option<u64>, extra: u64) -> PyResult<(Complex64, f64)> {
    let s = ComplexPoint::new(sigma, t);
    let r = match n {
        Some(n) => zeta::zeta_em(s, n, extra),
        None if extra == 0 => zeta::zeta(s),
        None => zeta::zeta_em(s, default_cutoff(s), extra),
    };
    r.map(pair).map_err(py_err)
}

/// ζ′(σ+it) and its error bound.
#[pyfunction]
#[pyo3(signature = (sigma, t=0.0, n=None, extra=0))]
fn zeta_prime(sigma: f64, t: f64, n: Option<u64>, extra: u64) -> PyResult<(Complex64, f64)> {
    let s = ComplexPoint::new(sigma, t);
    let r = match n {
        Some(n) => zeta::zeta_prime_em(s, n, extra),
        None if extra == 0 => zeta::zeta_prime(s),
        None => zeta::zeta_prime_em(s, default_cutoff(s), extra),
    };
    r.map(pair).map_err(py_err)
}

/// ζ(s, a) for 0 < a ≤ 1.
#[pyfunction]
fn hurwitz_zeta(s: Complex64, a: f64) -> PyResult<(Complex64, f64)> {
    zeta::hurwitz_zeta_auto(s.into(), a).map(pair).map_err(py_err)
}

#[pyfunction]
fn gamma(s: Complex64) -> PyResult<Complex64> {
    zetalab_core::gamma::gamma(s).map_err(py_err)
}

/// |ζ(1−s) − 2(2π)^{−s} Γ(s) cos(πs/2) ζ(s)| for 0 < σ < 1.
#[pyfunction]
#[pyo3(signature = (sigma, t=0.0))]
fn functional_equation_residual(sigma: f64, t: f64) -> PyResult<f64> {
    zeta::functional_equation_residual(ComplexPoint::new(sigma, t)).map_err(py_err)
}

#[pyfunction]
fn hardy_z(t: f64) -> PyResult<f64> {
    zeta::hardy_z(t).map_err(py_err)
}

/// A zero of Z(t) in [t_lo, t_hi], which must bracket a sign change.
#[pyfunction]
#[pyo3(signature = (t_lo, t_hi, tol=1e-10))]
fn locate_zero(t_lo: f64, t_hi: f64, tol: f64) -> PyResult<f64> {
    zeta::locate_zero(t_lo, t_hi, tol).map_err(py_err)
}

/// Line integral of x^s/(s(s+1)…(s+k)) with u = x, against its closed form.
#[pyfunction]
#[pyo3(signature = (u, k=1, c=2.0, t_max=1e4, dt=0.1))]
fn kernel<'py>(py: Python<'py>, u: f64, k: u32, c: f64, t_max: f64, dt: f64) -> PyResult<Bound<'py, PyDict>> {
    let r = kernel_integral(u, k, &LineQuadSpec::new(c, t_max, dt)).map_err(py_err)?;
    quad_dict(py, &r)
}

#[pyfunction]
fn kernel_exact(u: f64, k: u32) -> f64 {
    kernel_closed_form(u, k)
}

/// 3-4-1 scan over a σ × t grid; adds `holds` for the ≥ 1 check.
#[pyfunction]
#[pyo3(signature = (sigma_min=1.01, sigma_max=2.0, t_min=std::f64::consts::E, t_max=50.0, n_sigma=50, n_t=50))]
fn scan_three_four_one<'py>(
    py: Python<'py>,
    sigma_min: f64,
    sigma_max: f64,
    t_min: f64,
    t_max: f64,
    n_sigma: usize,
    n_t: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let r = scan_341(GridSpec::new(sigma_min, sigma_max, t_min, t_max, n_sigma, n_t)).map_err(py_err)?;
    let d = scan_dict(py, &r)?;
    d.set_item("holds", check_341(&r))?;
    Ok(d)
}

/// min |ζ(1+it)| over n log-spaced t.
#[pyfunction]
#[pyo3(signature = (t_min=std::f64::consts::E, t_max=100.0, n=2000))]
fn scan_nonvanishing<'py>(py: Python<'py>, t_min: f64, t_max: f64, n: usize) -> PyResult<Bound<'py, PyDict>> {
    let r = nonvanishing_scan(t_min, t_max, n).map_err(py_err)?;
    scan_dict(py, &r)
}

/// Sieve-backed arithmetic functions up to a fixed limit.
#[pyclass(name = "ArithTable", frozen)]
struct PyArithTable {
    inner: zetalab_core::ArithTable,
}

#[pymethods]
impl PyArithTable {
    #[new]
    fn new(limit: u64) -> PyResult<Self> {
        Ok(Self { inner: zetalab_core::ArithTable::build(limit).map_err(py_err)? })
    }

    #[getter]
    fn limit(&self) -> u64 {
        self.inner.limit()
    }

    fn mangoldt(&self, n: usize) -> PyResult<f64> {
        self.inner.mangoldt().get(n).copied().ok_or_else(|| PyValueError::new_err("n out of range"))
    }

    fn mobius(&self, n: usize) -> PyResult<i8> {
        self.inner.mobius().get(n).copied().ok_or_else(|| PyValueError::new_err("n out of range"))
    }

    fn liouville(&self, n: usize) -> PyResult<i8> {
        self.inner.liouville().get(n).copied().ok_or_else(|| PyValueError::new_err("n out of range"))
    }

    fn is_prime(&self, n: u64) -> bool {
        self.inner.is_prime(n)
    }

    fn psi(&self, x: f64) -> PyResult<f64> {
        self.inner.chebyshev_psi(x).map_err(py_err)
    }

    fn theta(&self, x: f64) -> PyResult<f64> {
        self.inner.chebyshev_theta(x).map_err(py_err)
    }

    fn psi1(&self, x: f64) -> PyResult<f64> {
        self.inner.psi1(x).map_err(py_err)
    }

    fn prime_pi(&self, x: f64) -> PyResult<u64> {
        self.inner.prime_pi(x).map_err(py_err)
    }

    fn tauberian_holds(&self, x: f64, beta: f64) -> PyResult<bool> {
        self.inner.tauberian_inequality_check(x, beta).map_err(py_err)
    }

    /// Rows (x, ψ/x, 2ψ₁/x², ϑ/(π log x)).
    fn pnt_ratios(&self, xs: Vec<f64>) -> PyResult<Vec<(f64, f64, f64, f64)>> {
        let t = pnt_ratio_table(&self.inner, &xs).map_err(py_err)?;
        Ok(t.rows.iter().map(|r| (r.x, r.psi_over_x, r.psi1_ratio, r.theta_ratio)).collect())
    }

    /// Line integral for ψ₁(x)/x² − ½(1 − 1/x)² at abscissa c up to height t_max,
    /// compared with the sieve value.
    #[pyo3(signature = (x, c=1.0, t_max=1000.0, dt=None))]
    fn reconstruct<'py>(
        &self,
        py: Python<'py>,
        x: f64,
        c: f64,
        t_max: f64,
        dt: Option<f64>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let dt = dt.unwrap_or_else(|| LineQuadSpec::reconstruct_step(x));
        let r = reconstruct_psi1(x, &LineQuadSpec::new(c, t_max, dt), &self.inner).map_err(py_err)?;
        quad_dict(py, &r)
    }

    /// (|e^{G(s)} − ζ(s)|, combined bound) with the series cut at n_max.
    fn exp_identity(&self, s: Complex64, n_max: u64) -> PyResult<(f64, f64)> {
        let c = exp_identity_check(s.into(), n_max, &self.inner).map_err(py_err)?;
        Ok((c.deviation, c.bound))
    }

    /// max |(log ∗ μ)(n) − Λ(n)| for n ≤ n_max.
    fn mangoldt_identity_deviation(&self, n_max: usize) -> PyResult<f64> {
        let lam = log_derivative_coeffs(&CoeffTable::ones(n_max).map_err(py_err)?).map_err(py_err)?;
        lam.max_abs_diff(&CoeffTable::mangoldt(&self.inner, n_max).map_err(py_err)?).map_err(py_err)
    }
}

#[pymodule]
#[pyo3(name = "zetalab")]
fn zetalab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", zetalab_core::VERSION)?;
    m.add_class::<PyArithTable>()?;
    m.add_function(wrap_pyfunction!(zeta_value, m)?)?;
    m.add_function(wrap_pyfunction!(zeta_prime, m)?)?;
    m.add_function(wrap_pyfunction!(hurwitz_zeta, m)?)?;
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(functional_equation_residual, m)?)?;
    m.add_function(wrap_pyfunction!(hardy_z, m)?)?;
    m.add_function(wrap_pyfunction!(locate_zero, m)?)?;
    m.add_function(wrap_pyfunction!(kernel, m)?)?;
    m.add_function(wrap_pyfunction!(kernel_exact, m)?)?;
    m.add_function(wrap_pyfunction!(scan_three_four_one, m)?)?;
    m.add_function(wrap_pyfunction!(scan_nonvanishing, m)?)?;
    Ok(())
}
