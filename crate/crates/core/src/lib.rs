//! Arithmetic functions, the Riemann zeta function in σ > 0, Dirichlet-series
//! algebra and line quadrature for numerically checking the analytic proof of
//! the prime number theorem.
//!
//! Every evaluator returns a value together with an error bound, so higher
//! level checks can separate genuine violations from floating-point noise.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub mod arith;
pub mod bounds;
pub mod contour;
pub mod dirichlet;
pub mod error;
pub mod gamma;
pub mod summation;
pub mod zeta;

pub use arith::{ArithTable, ChebyshevValues};
pub use bounds::{
    growth_scan, inverse_zeta_scan, nonvanishing_scan, pnt_ratio_table, scan_341, trig_identity_check, GridSpec,
    PntRow, PntTable, ScanReport,
};
pub use contour::{
    h_function, horizontal_segment_bound, kernel_integral, mellin_psi1_direct, reconstruct_psi1, HLine,
    LineQuadSpec, QuadReport,
};
pub use dirichlet::{convolve, dirichlet_inverse, g_series, log_derivative_coeffs, CoeffTable};
pub use error::{Error, Result};
pub use gamma::gamma_fn;
pub use zeta::{
    euler_product_partial, functional_equation_residual, hurwitz_formula_residual, hurwitz_zeta,
    periodic_zeta, zeta_em, zeta_prime_em, EvalResult,
};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// A point s = σ + it of the complex plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexPoint {
    pub sigma: f64,
    pub t: f64,
}

impl ComplexPoint {
    pub const fn new(sigma: f64, t: f64) -> Self {
        Self { sigma, t }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.sigma, self.t)
    }
}

impl From<f64> for ComplexPoint {
    fn from(sigma: f64) -> Self {
        Self::new(sigma, 0.0)
    }
}

impl From<Complex64> for ComplexPoint {
    fn from(z: Complex64) -> Self {
        Self::new(z.re, z.im)
    }
}

impl fmt::Display for ComplexPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.t < 0.0 {
            write!(f, "{}-{}i", self.sigma, -self.t)
        } else {
            write!(f, "{}+{}i", self.sigma, self.t)
        }
    }
}
