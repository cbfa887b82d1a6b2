//! Residuals of the connection formulas between `P`, `Q` and their Whipple transforms.
//!
//! `Q̂_ν^μ = Q_ν^μ/Γ(ν+μ+1)` is used throughout so that every relation stays finite
//! when `ν ± μ` hits a negative integer.

use super::{check_cut, p_scaled, qhat_hyp, LegendreArgument};
use crate::error::{domain, Result};
use crate::scalar::{is_nonpositive_integer, rgamma, sin_pi, C, I};
use std::f64::consts::PI;

/// Relative residuals of the five connection formulas.
///
/// Each entry is `|lhs − rhs|` divided by the largest term magnitude in the formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityResiduals {
    /// `P_ν^μ = P_{−ν−1}^μ`.
    pub reflection: f64,
    /// `Q_ν^μ = e^{2iμπ} Γ(ν+μ+1)/Γ(ν−μ+1) Q_ν^{−μ}`.
    pub order_flip_q: f64,
    /// `P_ν^{−μ} = Γ(ν−μ+1)/Γ(ν+μ+1) (P_ν^μ − (2/π)e^{−iμπ} sin(μπ) Q_ν^μ)`.
    pub order_flip_p: f64,
    /// `Q_ν^{−μ}(z) Q_ν^μ(ω) = Q_ν^{−μ}(ω) Q_ν^μ(z)`.
    pub product_symmetry: f64,
    /// `−2 sin(μπ)/π Q_ν^{−μ}(z)Q_ν^μ(ω) = e^{−iμπ}P_ν^{−μ}(ω)Q_ν^μ(z) − e^{iμπ}P_ν^μ(ω)Q_ν^{−μ}(z)`.
    pub cross_product: f64,
}

impl IdentityResiduals {
    /// Largest of the five residuals.
    pub fn max(&self) -> f64 {
        [self.reflection, self.order_flip_q, self.order_flip_p, self.product_symmetry, self.cross_product]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

/// Relative residuals of the two Whipple relations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WhippleResiduals {
    /// `e^{−iμπ}Q_ν^μ(z) = √(π/2) Γ(ν+μ+1)(z²−1)^{−1/4} P_{−μ−1/2}^{−ν−1/2}(z/√(z²−1))`.
    pub first: f64,
    /// `P_ν^μ(z) = i e^{iνπ} √(2/π) (z²−1)^{−1/4} Q_{−μ−1/2}^{−ν−1/2}(z/√(z²−1))/Γ(−ν−μ)`.
    pub second: f64,
    /// `−ν−μ ∈ {0, −1, …}`: `1/Γ(−ν−μ)` vanishes and the second relation is only
    /// meaningful in the normalized form used here.
    pub gamma_degenerate: bool,
}

impl WhippleResiduals {
    pub fn max(&self) -> f64 {
        self.first.max(self.second)
    }
}

fn rel(diff: C, terms: &[C]) -> f64 {
    let scale = terms.iter().map(|t| t.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return diff.norm();
    }
    diff.norm() / scale
}

fn p(nu: C, mu: C, z: C) -> Result<C> {
    Ok(p_scaled(nu, mu, z)?.value())
}

fn qhat(nu: C, mu: C, z: C) -> Result<C> {
    Ok(qhat_hyp(nu, mu, z)?.value())
}

/// Residuals of the five connection formulas at `(ν, μ, z)` and second argument `ω`.
pub fn identity_residuals(arg: LegendreArgument, omega: C) -> Result<IdentityResiduals> {
    let LegendreArgument { nu, mu, z } = arg;
    check_cut("identity_residuals", z)?;
    check_cut("identity_residuals", omega)?;

    let p_z = p(nu, mu, z)?;
    let p_refl = p(-nu - 1.0, mu, z)?;
    let reflection = rel(p_z - p_refl, &[p_z, p_refl]);

    let qp_z = qhat(nu, mu, z)?;
    let qm_z = qhat(nu, -mu, z)?;
    let flipped = (2.0 * I * mu * PI).exp() * qm_z;
    let order_flip_q = rel(qp_z - flipped, &[qp_z, flipped]);

    let pm_z = p(nu, -mu, z)?;
    let t1 = rgamma(nu - mu + 1.0) * pm_z;
    let t2 = rgamma(nu + mu + 1.0) * p_z;
    let t3 = (2.0 / PI) * (-I * mu * PI).exp() * sin_pi(mu) * qp_z;
    let order_flip_p = rel(t1 - t2 + t3, &[t1, t2, t3]);

    let qp_w = qhat(nu, mu, omega)?;
    let qm_w = qhat(nu, -mu, omega)?;
    let s1 = qm_z * qp_w;
    let s2 = qm_w * qp_z;
    let product_symmetry = rel(s1 - s2, &[s1, s2]);

    let p_w = p(nu, mu, omega)?;
    let pm_w = p(nu, -mu, omega)?;
    let l = -2.0 * sin_pi(mu) / PI * s1;
    let r1 = (-I * mu * PI).exp() * pm_w * rgamma(nu - mu + 1.0) * qp_z;
    let r2 = (I * mu * PI).exp() * p_w * rgamma(nu + mu + 1.0) * qm_z;
    let cross_product = rel(l - r1 + r2, &[l, r1, r2]);

    Ok(IdentityResiduals { reflection, order_flip_q, order_flip_p, product_symmetry, cross_product })
}

/// Residuals of the Whipple relations for `Re z > 0`, `z ∉ (−∞, 1]`.
pub fn whipple_residuals(nu: C, mu: C, z: C) -> Result<WhippleResiduals> {
    check_cut("whipple_residuals", z)?;
    if !(z.re > 0.0) {
        return Err(domain("whipple_residuals", format!("need Re z > 0, got {z}")));
    }
    let s2 = z * z - 1.0;
    let big = z / s2.sqrt();
    check_cut("whipple_residuals", big)?;
    let quarter = (-0.25 * s2.ln()).exp();

    let lhs1 = (-I * mu * PI).exp() * qhat(nu, mu, z)?;
    let rhs1 = (0.5 * PI).sqrt() * quarter * p(-mu - 0.5, -nu - 0.5, big)?;
    let first = rel(lhs1 - rhs1, &[lhs1, rhs1]);

    let lhs2 = p(nu, mu, z)?;
    let rhs2 = I * (I * nu * PI).exp() * (2.0 / PI).sqrt() * quarter * qhat(-mu - 0.5, -nu - 0.5, big)?;
    let second = rel(lhs2 - rhs2, &[lhs2, rhs2]);

    Ok(WhippleResiduals { first, second, gamma_degenerate: is_nonpositive_integer(-nu - mu) })
}
