//! Explicit upper bounds for products of Legendre functions.

use crate::error::{precondition, Error, Result};
use crate::scalar::{c, ln_gamma, C};
use std::f64::consts::PI;

/// Which estimate `bound_qq_product` applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundRegime {
    /// `Re ν ≥ −1/2`: `π⁴ (|ν|+1+ρ)^{2|ν|+1} e^{−πρ} / (√(z−1)√(ω−1)|Γ(ν+1)|²)`.
    DegreeAboveMinusHalf,
    /// `Re ν ≥ 0`: `π² ln((z+1)/(z−1)) ln((ω+1)/(ω−1)) (|ν|+1+ρ)^{2|ν|+1} e^{−πρ}/|Γ(ν+1)|²`.
    DegreeNonNegative,
    /// `−1 < Re ν < −1/2`.
    DegreeBelowMinusHalf,
}

fn check_args(op: &'static str, rho: f64, z: f64, omega: f64) -> Result<()> {
    if !(z > 1.0 && omega > 1.0 && z.is_finite() && omega.is_finite()) {
        return Err(precondition(op, format!("need z, ω ∈ (1, ∞), got z = {z}, ω = {omega}")));
    }
    if !(rho >= 0.0 && rho.is_finite()) {
        return Err(precondition(op, format!("need ρ ≥ 0, got {rho}")));
    }
    Ok(())
}

/// Logarithm of the bound on `|Q_ν^{−iρ}(z) Q_ν^{iρ}(ω)|` and the regime used.
///
/// For `Re ν ≥ 0` both the first and second estimates apply and the smaller is returned.
pub(crate) fn ln_bound_qq_product(nu: C, rho: f64, z: f64, omega: f64) -> Result<(f64, BoundRegime)> {
    const OP: &str = "bound_qq_product";
    check_args(OP, rho, z, omega)?;
    let r = nu.re;
    if r <= -1.0 {
        return Err(Error::Regime { op: OP, detail: format!("no estimate for Re ν = {r} ≤ −1") });
    }
    let lg = 2.0 * ln_gamma(nu + 1.0).re;
    if r < -0.5 {
        let l = 3.0 * PI.ln() + 1.0 / (3.0 * (r + 1.0))
            - lg
            - (r + 1.0) * ((z - 1.0).ln() + (omega - 1.0).ln())
            - (1.0 - 2.0 * r) * (r + 1.0).ln()
            - PI * rho;
        return Ok((l, BoundRegime::DegreeBelowMinusHalf));
    }
    let an = nu.norm();
    let poly = (2.0 * an + 1.0) * (an + 1.0 + rho).ln() - lg - PI * rho;
    let first = 4.0 * PI.ln() - 0.5 * ((z - 1.0).ln() + (omega - 1.0).ln()) + poly;
    if r < 0.0 {
        return Ok((first, BoundRegime::DegreeAboveMinusHalf));
    }
    let lnl = |x: f64| ((x + 1.0) / (x - 1.0)).ln().ln();
    let second = 2.0 * PI.ln() + lnl(z) + lnl(omega) + poly;
    if second < first {
        Ok((second, BoundRegime::DegreeNonNegative))
    } else {
        Ok((first, BoundRegime::DegreeAboveMinusHalf))
    }
}

/// Upper bound for `|Q_ν^{−iρ}(z) Q_ν^{iρ}(ω)|`, `z, ω > 1`, `ρ ≥ 0`, `Re ν > −1`.
pub fn bound_qq_product(nu: C, rho: f64, z: f64, omega: f64) -> Result<(f64, BoundRegime)> {
    let (l, regime) = ln_bound_qq_product(nu, rho, z, omega)?;
    Ok((l.exp(), regime))
}

/// `sup_{μ' ≥ μ₀} ln(Γ(ν+1+μ')/Γ(1/2+μ')) − (ν+1/2) ln μ'`, sampled on a logarithmic grid
/// that also contains `extra`.
fn ln_gamma_ratio_constant(nu: f64, mu0: f64, extra: f64) -> f64 {
    let f = |m: f64| (ln_gamma(c(nu + 1.0 + m)) - ln_gamma(c(0.5 + m))).re - (nu + 0.5) * m.ln();
    let mut best = f(extra);
    let mut m = mu0;
    while m < 1e8 {
        best = best.max(f(m));
        m *= 1.02;
    }
    best.max(0.0)
}

/// Logarithm of `C e^{(ν+1/2)a} μ^{ν+1/2} (D sinh(a/2))^μ`, with the constant `C̃` taken
/// over `μ' ≥ min(μ_floor, μ)`.
pub(crate) fn ln_bound_pq_product(nu: f64, mu: f64, a: f64, b: f64, mu_floor: f64) -> Result<f64> {
    const OP: &str = "bound_pq_product";
    if !(nu > 0.0 && nu.is_finite()) {
        return Err(precondition(OP, format!("degree ν = {nu} must be positive")));
    }
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(precondition(OP, format!("order μ = {mu} must be positive")));
    }
    if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
        return Err(precondition(OP, format!("need a, b > 0, got a = {a}, b = {b}")));
    }
    let ct = ln_gamma_ratio_constant(nu, mu_floor.min(mu), mu);
    let cb = b.cosh();
    let ln_c = ct + (3.0 * cb / (cb - 1.0)).ln() - ln_gamma(c(nu + 1.0)).re;
    let ln_d = (2.0 / b.tanh()).ln();
    Ok(ln_c + (nu + 0.5) * a + (nu + 0.5) * mu.ln() + mu * (ln_d + (0.5 * a).sinh().ln()))
}

/// Upper bound `C e^{(ν+1/2)a} μ^{ν+1/2} (D sinh(a/2))^μ` for `|P_ν^{−μ}(cosh a) Q_ν^μ(cosh b)|`.
///
/// `D = 2 coth b` and `C = C̃ · 3 cosh b/((cosh b − 1)Γ(ν+1))`, where `C̃` bounds
/// `Γ(ν+1+μ')/(Γ(1/2+μ') μ'^{ν+1/2})` for `μ' ≥ min(μ, 1)`. The supremum over all `μ' > 0`
/// is infinite for `ν > −1/2`, so the constant cannot be uniform down to `μ = 0`.
pub fn bound_pq_product(nu: f64, mu: f64, a: f64, b: f64) -> Result<f64> {
    Ok(ln_bound_pq_product(nu, mu, a, b, 1.0)?.exp())
}

/// Upper bound `e^{ν(a−b)} e^{a/2} ln((cosh b + 1)/(cosh b − 1))` for `|P_ν(cosh a) Q_ν(cosh b)|`.
pub fn bound_pq_product_order_zero(nu: f64, a: f64, b: f64) -> Result<f64> {
    const OP: &str = "bound_pq_product_order_zero";
    if !(nu > 0.0 && nu.is_finite()) {
        return Err(precondition(OP, format!("degree ν = {nu} must be positive")));
    }
    if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
        return Err(precondition(OP, format!("need a, b > 0, got a = {a}, b = {b}")));
    }
    let cb = b.cosh();
    Ok((nu * (a - b) + 0.5 * a).exp() * ((cb + 1.0) / (cb - 1.0)).ln())
}
