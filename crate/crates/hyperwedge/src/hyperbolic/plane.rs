//! Green's function and heat kernel of the hyperbolic plane.

use super::{hyperbolic_distance, PolarPoint, SpectralParameter};
use crate::error::{domain, precondition, Result};
use crate::legendre::mehler::MehlerRule;
use crate::legendre::{p_neg_order_rule, q_scaled};
use crate::mehler_fock::{transform_lhs, Cosine, TransformConfig, TransformRequest};
use crate::quadrature::{integrate_panels, Estimate, QuadratureConfig};
use crate::scalar::{c, ln_gamma, C, ZERO};
use std::f64::consts::PI;

/// `ln` of the Gaussian factor below which the heat integrands are cut off.
const GAUSS_CUTOFF: f64 = 40.0;

/// `(1/2π) Q_ν(cosh d)`, `ν = √s − 1/2`; real and positive for real `s > 1/4`.
pub fn green_plane(d: f64, s: SpectralParameter) -> Result<C> {
    if !(d > 0.0) || !d.is_finite() {
        return Err(domain("green_plane", format!("distance d = {d} must be positive (logarithmic singularity at 0)")));
    }
    let nu = s.nu();
    if d >= NEAR_DIAGONAL {
        return Ok(q_scaled(nu, ZERO, c(d.cosh()))?.value() / (2.0 * PI));
    }
    // Whipple: Q_ν(cosh d) = √(π/2) Γ(ν+1) (sinh d)^{−1/2} P_{−1/2}^{−ν−1/2}(coth d)
    let t = (1.0 / d.sinh()).asinh();
    let p = p_neg_order_rule(c(-0.5), nu + 0.5, t)?;
    let log = ln_gamma(nu + 1.0) + 0.5 * (0.5 * PI).ln() - 0.5 * d.sinh().ln();
    Ok(p.mul(crate::scalar::Scaled::from_log(log)).value() / (2.0 * PI))
}

/// Distance below which [`green_plane`] avoids forming `cosh d`.
const NEAR_DIAGONAL: f64 = 0.25;

/// `(1/π²) ∫_0^∞ Q_ν^{−iρ}(cosh a) Q_ν^{iρ}(cosh b) cosh(ρ(π − |α−β|)) dρ`.
///
/// Equals [`green_plane`] at the distance of the two points; for `α = β` the integral
/// converges only conditionally and fails with a divergence error when also `a = b`.
pub fn green_plane_polar(x: &PolarPoint, y: &PolarPoint, s: SpectralParameter, cfg: &TransformConfig) -> Result<Estimate> {
    if x.is_vertex() || y.is_vertex() {
        return Err(precondition("green_plane_polar", "points must differ from the vertex"));
    }
    let kernel = Cosine::new((x.alpha - y.alpha).abs())?;
    let req = TransformRequest { kernel: &kernel, nu: s.nu(), z: x.a.cosh(), omega: y.a.cosh() };
    let est = transform_lhs(&req, cfg)?;
    Ok(Estimate { value: est.value / (2.0 * PI), err_est: est.err_est / (2.0 * PI) })
}

fn check_heat(op: &'static str, d: f64, t: f64) -> Result<()> {
    if !(d >= 0.0 && d.is_finite()) {
        return Err(domain(op, format!("distance d = {d} must be non-negative")));
    }
    if !(t > 0.0 && t.is_finite()) {
        return Err(domain(op, format!("time t = {t} must be positive")));
    }
    Ok(())
}

/// `(1/2π) ∫_0^∞ e^{−(1/4+ρ²)t} P_{−1/2+iρ}(cosh d) ρ tanh(πρ) dρ`.
pub fn heat_plane_spectral(d: f64, t: f64, cfg: &QuadratureConfig) -> Result<f64> {
    const OP: &str = "heat_plane_spectral";
    check_heat(OP, d, t)?;
    let rho_max = (GAUSS_CUTOFF / t).sqrt() + 1.0;
    let rule = if d > 0.0 { Some(MehlerRule::new(d, ZERO, rho_max)?) } else { None };
    let f = |rho: f64| -> Result<C> {
        let p = rule.as_ref().map_or(1.0, |r| r.eval_cos(rho).value().re);
        Ok(c((-(0.25 + rho * rho) * t).exp() * p * rho * (PI * rho).tanh()))
    };
    let n = (2.0 * rho_max * (1.0 + d)).ceil() as usize;
    let points: Vec<f64> = (0..=n).map(|k| rho_max * k as f64 / n as f64).collect();
    Ok(integrate_panels(f, &points, cfg)?.value.re / (2.0 * PI))
}

/// `√2/(4πt)^{3/2} e^{−t/4} ∫_d^∞ ρ e^{−ρ²/(4t)} (cosh ρ − cosh d)^{−1/2} dρ`.
///
/// The substitution `ρ = √(d² + v²)` removes the endpoint singularity.
pub fn heat_plane_mckean(d: f64, t: f64, cfg: &QuadratureConfig) -> Result<f64> {
    const OP: &str = "heat_plane_mckean";
    check_heat(OP, d, t)?;
    let f = |v: f64| -> C {
        let x = (d * d + v * v).sqrt();
        let g = (-(d * d + v * v) / (4.0 * t)).exp();
        if v == 0.0 {
            // limit of v/√(cosh x − cosh d) as v → 0
            let lim = if d == 0.0 { 2f64.sqrt() } else { (2.0 * d / d.sinh()).sqrt() };
            return c(g * lim);
        }
        // cosh x − cosh d = 2 sinh((x+d)/2) sinh((x−d)/2), x − d = v²/(x+d)
        let diff = 2.0 * (0.5 * (x + d)).sinh() * (0.5 * v * v / (x + d)).sinh();
        c(g * v / diff.sqrt())
    };
    let v_max = (4.0 * t * GAUSS_CUTOFF).sqrt();
    let n = (v_max.ceil() as usize).max(4);
    let points: Vec<f64> = (0..=n).map(|k| v_max * k as f64 / n as f64).collect();
    let integral = integrate_panels(|v| Ok(f(v)), &points, cfg)?.value.re;
    Ok(2f64.sqrt() / (4.0 * PI * t).powf(1.5) * (-0.25 * t).exp() * integral)
}

/// Heat kernel of the plane between two points.
pub(crate) fn heat_plane_points(x: &PolarPoint, y: &PolarPoint, t: f64, cfg: &QuadratureConfig) -> Result<f64> {
    heat_plane_mckean(hyperbolic_distance(x, y), t, cfg)
}
