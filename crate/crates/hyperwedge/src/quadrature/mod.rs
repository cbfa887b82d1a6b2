//! Numerical integration and Laplace inversion.

mod adaptive;
mod gauss;
mod infinite;
mod talbot;

pub use adaptive::{
    integrate_endpoint_singular, integrate_endpoint_singular_fallible, integrate_finite, integrate_finite_fallible,
    integrate_panels, Endpoint,
};
pub use gauss::{gl16, GaussLegendre};
pub(crate) use infinite::{averaged, Cumulative};
pub use infinite::{
    integrate_oscillatory_tail, integrate_oscillatory_tail_fallible, integrate_semi_infinite_bounded,
    integrate_semi_infinite_decaying, integrate_semi_infinite_decaying_fallible,
};
pub use talbot::{invert_laplace, invert_laplace_default, invert_laplace_parallel, talbot_nodes, Inversion, LaplaceInversionConfig};

use crate::error::{precondition, Result};
use crate::scalar::C;

/// Tolerances governing the integrators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    /// Overrides the decay rate passed to the semi-infinite integrator.
    pub tail_decay_rate: Option<f64>,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig { rel_tol: 1e-10, abs_tol: 1e-14, max_subdivisions: 2000, tail_decay_rate: None }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) || self.max_subdivisions == 0 {
            return Err(precondition("quadrature", "tolerances must be positive and max_subdivisions ≥ 1"));
        }
        Ok(())
    }
}

/// `∫_0^∞ e^{−st} f(t) dt` for real `s > 0` and `f` bounded by a polynomial.
pub fn laplace_transform<F: FnMut(f64) -> Result<f64>>(mut f: F, s: f64, cfg: &QuadratureConfig) -> Result<Estimate> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(precondition("laplace_transform", format!("s = {s} must be positive")));
    }
    integrate_semi_infinite_decaying_fallible(|t| Ok(crate::scalar::c((-s * t).exp() * f(t)?)), 0.0, s, cfg)
}

/// Integral value with an error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: C,
    pub err_est: f64,
}
