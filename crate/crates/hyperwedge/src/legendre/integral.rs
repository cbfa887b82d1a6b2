//! Integral representations used as independent evaluation paths.

use super::mehler::MehlerRule;
use crate::error::{precondition, Result};
use crate::quadrature::{integrate_endpoint_singular, Endpoint, QuadratureConfig};
use crate::scalar::{c, is_nonpositive_integer, ln_gamma, C, I};
use std::f64::consts::{FRAC_PI_2, PI};

fn tight() -> QuadratureConfig {
    QuadratureConfig { rel_tol: 1e-13, abs_tol: 1e-300, max_subdivisions: 20_000, tail_decay_rate: None }
}

/// `Q_ν^μ(z)` from
/// `e^{μπi} 2^{−ν−1} Γ(ν+1+μ)/Γ(ν+1) (z²−1)^{−μ/2} ∫_0^π sin^{2ν+1}t (z + cos t)^{μ−ν−1} dt`.
///
/// Requires `Re μ ≥ 0`, `Re ν > −1` and real `z > 1`.
pub fn legendre_q_via_integral(nu: C, mu: C, z: f64) -> Result<C> {
    const OP: &str = "legendre_q_via_integral";
    if !(mu.re >= 0.0) || !(nu.re > -1.0) {
        return Err(precondition(OP, format!("need Re μ ≥ 0 and Re ν > −1, got ν = {nu}, μ = {mu}")));
    }
    if !(z > 1.0 && z.is_finite()) {
        return Err(precondition(OP, format!("z = {z} must be a finite real above 1")));
    }
    if is_nonpositive_integer(nu + mu + 1.0) {
        return Err(precondition(OP, "ν + μ is a negative integer"));
    }
    // fold [π/2, π] onto [0, π/2] so that both endpoint singularities sit at 0
    let e = mu - nu - 1.0;
    let s = 2.0 * nu + 1.0;
    let f = |t: f64| {
        let ls = s * t.sin().ln();
        let ct = t.cos();
        (ls + e * (z + ct).ln()).exp() + (ls + e * (z - ct).ln()).exp()
    };
    let exponent = s.re.min(0.0);
    let int = integrate_endpoint_singular(f, 0.0, FRAC_PI_2, exponent, Endpoint::Left, &tight())?;
    let log = I * mu * PI - (nu + 1.0) * 2f64.ln() + ln_gamma(nu + mu + 1.0) - ln_gamma(nu + 1.0)
        - mu * 0.5 * (z * z - 1.0).ln();
    Ok(int.value * log.exp())
}

/// `P_ν^{−μ}(cosh a)` from
/// `√2/(√π sinhᵘ a Γ(1/2+μ)) ∫_0^a cosh((ν+1/2)x)(cosh a − cosh x)^{μ−1/2} dx`, `μ ≥ 0`, `a > 0`.
pub fn legendre_p_neg_order_via_integral(nu: C, mu: f64, a: f64) -> Result<C> {
    const OP: &str = "legendre_p_neg_order_via_integral";
    if !(mu >= 0.0 && mu.is_finite()) {
        return Err(precondition(OP, format!("order μ = {mu} must be non-negative")));
    }
    if !(a > 0.0 && a.is_finite()) {
        return Err(precondition(OP, format!("a = {a} must be positive")));
    }
    let lambda = nu + 0.5;
    let rule = MehlerRule::new(a, c(mu), lambda.norm())?;
    Ok(rule.eval(lambda).value())
}
