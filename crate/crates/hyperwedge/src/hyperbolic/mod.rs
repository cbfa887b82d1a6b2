//! Green's functions and heat kernels of the hyperbolic plane and of hyperbolic
//! wedges, in geodesic polar coordinates `(a, α)` about the wedge vertex.
//!
//! Spectral quantities use the shifted normalization: `green_plane(d, s)` is the
//! resolvent kernel of `Δ − 1/4` at `s`, equivalently the unshifted one at `s − 1/4`,
//! and its degree is `ν = √s − 1/2`.

mod pde;
mod plane;
mod wedge;

pub use pde::pde_residual;
pub use plane::{green_plane, green_plane_polar, heat_plane_mckean, heat_plane_spectral};
pub use wedge::{green_wedge, green_wedge_subtractive, h_quarter, h_quarter_series, heat_wedge, HeatWedge};

use crate::error::{domain, Result};
use crate::scalar::C;
use std::f64::consts::PI;

/// A point in geodesic polar coordinates: radius `a ≥ 0`, angle `α ∈ [0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarPoint {
    pub a: f64,
    pub alpha: f64,
}

impl PolarPoint {
    pub fn new(a: f64, alpha: f64) -> Result<Self> {
        if !(a >= 0.0 && a.is_finite()) {
            return Err(domain("polar_point", format!("radius a = {a} must be non-negative")));
        }
        if !(0.0..2.0 * PI).contains(&alpha) {
            return Err(domain("polar_point", format!("angle α = {alpha} must lie in [0, 2π)")));
        }
        Ok(PolarPoint { a, alpha })
    }

    /// Whether this is the vertex `a = 0`.
    pub fn is_vertex(&self) -> bool {
        self.a == 0.0
    }
}

/// A hyperbolic wedge of opening angle `γ ∈ (0, 2π]` bounded by the rays `α = 0` and `α = γ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WedgeSpec {
    gamma: f64,
}

impl WedgeSpec {
    pub fn new(gamma: f64) -> Result<Self> {
        if !(gamma > 0.0 && gamma <= 2.0 * PI) {
            return Err(domain("wedge", format!("angle γ = {gamma} must lie in (0, 2π]")));
        }
        Ok(WedgeSpec { gamma })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// `a > 0` and `0 < α < γ`.
    pub fn contains(&self, x: &PolarPoint) -> bool {
        x.a > 0.0 && x.alpha > 0.0 && x.alpha < self.gamma
    }

    /// `a > 0` and `0 ≤ α ≤ γ`.
    pub fn contains_closure(&self, x: &PolarPoint) -> bool {
        x.a > 0.0 && x.alpha >= 0.0 && x.alpha <= self.gamma
    }
}

/// The spectral parameter `s ∈ ℂ ∖ (−∞, 0]` with degree `ν = √s − 1/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralParameter {
    s: C,
}

impl SpectralParameter {
    pub fn new(s: C) -> Result<Self> {
        if s.im == 0.0 && s.re <= 0.0 || !(s.re.is_finite() && s.im.is_finite()) {
            return Err(domain("spectral_parameter", format!("s = {s} lies on (−∞, 0]")));
        }
        Ok(SpectralParameter { s })
    }

    pub fn real(s: f64) -> Result<Self> {
        Self::new(C::new(s, 0.0))
    }

    pub fn s(&self) -> C {
        self.s
    }

    /// `ν = √s − 1/2`, principal root; `ν(ν+1) = s − 1/4`.
    pub fn nu(&self) -> C {
        self.s.sqrt() - 0.5
    }
}

/// Geodesic distance: `cosh d = cosh a cosh b − sinh a sinh b cos(α − β)`.
///
/// Evaluated as `2 asinh √(sinh²((a−b)/2) + sinh a sinh b sin²((α−β)/2))`, which keeps
/// full relative accuracy for nearby points.
pub fn hyperbolic_distance(x: &PolarPoint, y: &PolarPoint) -> f64 {
    let h = (0.5 * (x.a - y.a)).sinh();
    let s = (0.5 * (x.alpha - y.alpha)).sin();
    2.0 * (h * h + x.a.sinh() * y.a.sinh() * s * s).sqrt().asinh()
}

/// Spectral parameter of the unshifted operator: `G^{1/4}(x, y; s) = G(x, y; s − 1/4)`.
pub fn shift_relation(s: C) -> C {
    s - 0.25
}

/// `K^{1/4}(t) = e^{t/4} K(t)`, the shifted heat kernel from the unshifted one.
pub fn shifted_heat(k: f64, t: f64) -> f64 {
    (0.25 * t).exp() * k
}
