//! Associated Legendre functions `P_ν^μ(z)` and `Q_ν^μ(z)` of complex degree and
//! order for `z ∉ (−∞, 1]`.
//!
//! `P_ν^μ(z) = ((z+1)/(z−1))^{μ/2} F(−ν, ν+1; 1−μ; (1−z)/2)/Γ(1−μ)` and
//! `Q_ν^μ(z) = e^{iμπ} √π Γ(ν+μ+1) (z²−1)^{μ/2} / (2^{ν+1} z^{ν+μ+1}) · F((ν+μ+2)/2, (ν+μ+1)/2; ν+3/2; 1/z²)/Γ(ν+3/2)`,
//! all powers principal. The normalized function `Q_ν^μ/Γ(ν+μ+1)` is entire in
//! `ν + μ` and is exposed separately.

pub(crate) mod asymptotics;
pub(crate) mod bounds;
mod identities;
mod integral;
pub(crate) mod mehler;

pub use asymptotics::{
    asymp_p_imag_degree, asymp_p_large_nu, asymp_q_large_nu, product_asymp_mu, product_asymp_rho, windowed_deviation, TildePair,
};
pub use bounds::{bound_pq_product, bound_pq_product_order_zero, bound_qq_product, BoundRegime};
pub use identities::{identity_residuals, whipple_residuals, IdentityResiduals, WhippleResiduals};
pub use integral::{legendre_p_neg_order_via_integral, legendre_q_via_integral};

use crate::error::{Error, Result};
use crate::hypergeometric::hyp2f1_scaled;
use crate::scalar::{c, is_nonpositive_integer, ln_gamma, ln_sin_pi, Scaled, C, I, ONE};
use mehler::MehlerRule;
use std::f64::consts::PI;

/// Degree `ν`, order `μ` and argument `z` of a Legendre function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LegendreArgument {
    pub nu: C,
    pub mu: C,
    pub z: C,
}

impl LegendreArgument {
    pub fn new(nu: C, mu: C, z: C) -> Self {
        LegendreArgument { nu, mu, z }
    }

    /// Real-argument shorthand.
    pub fn real(nu: f64, mu: f64, z: f64) -> Self {
        LegendreArgument { nu: c(nu), mu: c(mu), z: c(z) }
    }
}

const WHIPPLE_NEAR_ONE: f64 = 1.05;
const LARGE_IMAG: f64 = 8.0;
const LARGE_DEGREE: f64 = 25.0;

fn check_cut(op: &'static str, z: C) -> Result<()> {
    if z.im == 0.0 && z.re <= 1.0 {
        return Err(Error::Cut { op, at: z });
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain { op, detail: format!("non-finite argument {z}") });
    }
    Ok(())
}

fn is_real_above_one(z: C) -> bool {
    z.im == 0.0 && z.re > 1.0
}

/// `P_ν^μ(z)`.
pub fn legendre_p(arg: LegendreArgument) -> Result<C> {
    Ok(p_scaled(arg.nu, arg.mu, arg.z)?.value())
}

/// `Q_ν^μ(z)`; errors with [`Error::ParameterPole`] when `ν + μ ∈ {−1, −2, …}`.
pub fn legendre_q(arg: LegendreArgument) -> Result<C> {
    Ok(q_scaled(arg.nu, arg.mu, arg.z)?.value())
}

/// `Q_ν^μ(z)/Γ(ν+μ+1)`, entire in `ν + μ`.
pub fn legendre_q_normalized(arg: LegendreArgument) -> Result<C> {
    Ok(qhat_scaled(arg.nu, arg.mu, arg.z)?.value())
}

pub(crate) fn p_scaled(nu: C, mu: C, z: C) -> Result<Scaled> {
    check_cut("legendre_p", z)?;
    let m = -mu;
    if is_real_above_one(z) && (nu.norm() > LARGE_DEGREE || nu.im.abs() > LARGE_IMAG) {
        if m.re >= 0.0 {
            return p_neg_order_rule(nu, m, z.re.acosh());
        }
        return p_positive_order(nu, mu, z.re);
    }
    p_hyp(nu, mu, z)
}

/// `P_ν^μ = Γ(ν+μ+1)/Γ(ν−μ+1) P_ν^{−μ} + (2/π) e^{−iμπ} sin(μπ) Q_ν^μ` for `Re μ > 0`,
/// which avoids the cancellation of the `(1−z)/2` series at large degree.
fn p_positive_order(nu: C, mu: C, z: f64) -> Result<Scaled> {
    let mut out = Scaled::new(c(0.0));
    if !is_nonpositive_integer(nu - mu + 1.0) {
        let ratio = Scaled::from_log(ln_gamma(nu + mu + 1.0) - ln_gamma(nu - mu + 1.0));
        out = ratio.mul(p_neg_order_rule(nu, mu, z.acosh())?);
    }
    let integer_order = mu.im == 0.0 && mu.re.fract() == 0.0;
    if !integer_order {
        let factor = Scaled::from_log(c((2.0 / PI).ln()) - I * mu * PI + ln_sin_pi(mu));
        out = out.add(factor.mul(q_scaled(nu, mu, c(z))?));
    }
    Ok(out)
}

/// `P_ν^{−m}(cosh t)` by the Mehler integral.
pub(crate) fn p_neg_order_rule(nu: C, m: C, t: f64) -> Result<Scaled> {
    let lambda = nu + 0.5;
    let rule = MehlerRule::new(t, m, lambda.norm())?;
    Ok(rule.eval(lambda))
}

pub(crate) fn p_hyp(nu: C, mu: C, z: C) -> Result<Scaled> {
    let pre = if mu == c(0.0) { c(0.0) } else { mu * 0.5 * ((z + 1.0) / (z - 1.0)).ln() };
    let f = hyp2f1_scaled(-nu, nu + 1.0, ONE - mu, (ONE - z) * 0.5)?;
    Ok(Scaled::from_log(pre).mul(f))
}

pub(crate) fn q_scaled(nu: C, mu: C, z: C) -> Result<Scaled> {
    check_cut("legendre_q", z)?;
    let s = nu + mu + 1.0;
    if is_nonpositive_integer(s) {
        return Err(Error::ParameterPole { op: "legendre_q", detail: format!("ν + μ = {} is a negative integer", s - 1.0) });
    }
    Ok(Scaled::from_log(ln_gamma(s)).mul(qhat_scaled(nu, mu, z)?))
}

/// Routed evaluation of `Q_ν^μ(z)/Γ(ν+μ+1)`.
pub(crate) fn qhat_scaled(nu: C, mu: C, z: C) -> Result<Scaled> {
    check_cut("legendre_q", z)?;
    if is_real_above_one(z) && (z.re < WHIPPLE_NEAR_ONE || (mu.im.abs() > LARGE_IMAG && nu.re > -1.0)) {
        return qhat_whipple(nu, mu, z.re);
    }
    qhat_hyp(nu, mu, z)
}

/// Hypergeometric representation of `Q_ν^μ(z)/Γ(ν+μ+1)`.
pub(crate) fn qhat_hyp(nu: C, mu: C, z: C) -> Result<Scaled> {
    check_cut("legendre_q", z)?;
    let lz = z.ln();
    let mut log = c(0.5 * PI.ln()) + I * mu * PI - (nu + 1.0) * 2f64.ln() - (nu + mu + 1.0) * lz;
    if mu != c(0.0) {
        log += mu * 0.5 * (z * z - 1.0).ln();
    }
    let f = hyp2f1_scaled((nu + mu + 2.0) * 0.5, (nu + mu + 1.0) * 0.5, nu + 1.5, ONE / (z * z))?;
    Ok(Scaled::from_log(log).mul(f))
}

/// `Q_ν^μ(z)/Γ(ν+μ+1) = e^{iμπ} √(π/2) (z²−1)^{−1/4} P_{−μ−1/2}^{−ν−1/2}(z/√(z²−1))` for real `z > 1`.
fn qhat_whipple(nu: C, mu: C, z: f64) -> Result<Scaled> {
    let s = (z * z - 1.0).sqrt();
    let big = z / s;
    let p = if nu.re > -1.0 {
        p_neg_order_rule(-mu - 0.5, nu + 0.5, big.acosh())?
    } else {
        p_hyp(-mu - 0.5, -nu - 0.5, c(big))?
    };
    let log = I * mu * PI + 0.5 * (0.5 * PI).ln() - 0.5 * s.ln();
    Ok(Scaled::from_log(log).mul(p))
}

#[cfg(test)]
mod tests;
