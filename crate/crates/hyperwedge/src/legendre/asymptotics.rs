//! Leading terms of the large-parameter expansions of `P`, `Q` and of the products
//! that appear in Mehler–Fock integrands.

use crate::error::{domain, Error, Result};
use crate::scalar::{c, ln_gamma, C, I};
use std::f64::consts::PI;

/// Sector half-width excluded around `arg ν = ±π` for the `Q` expansion.
const SECTOR_MARGIN: f64 = 1e-2;

/// `(z̃, ω̃)` with `cosh z̃ = z/√(z²−1)` and `cosh ω̃ = ω/√(ω²−1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TildePair {
    pub z_tilde: f64,
    pub omega_tilde: f64,
}

impl TildePair {
    /// Builds the pair for `z, ω ∈ (1, ∞)`.
    pub fn new(z: f64, omega: f64) -> Result<Self> {
        Ok(TildePair { z_tilde: tilde(z)?, omega_tilde: tilde(omega)? })
    }
}

/// `x̃ = arsinh(1/√(x²−1))`, the positive root of `cosh x̃ = x/√(x²−1)`.
pub(crate) fn tilde(x: f64) -> Result<f64> {
    if !(x > 1.0 && x.is_finite()) {
        return Err(domain("tilde", format!("argument {x} must lie in (1, ∞)")));
    }
    Ok((1.0 / ((x - 1.0) * (x + 1.0)).sqrt()).asinh())
}

fn check_a(op: &'static str, a: f64) -> Result<()> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(domain(op, format!("a = {a} must be positive")));
    }
    Ok(())
}

/// Leading term of `P_ν^μ(cosh a)` as `|ν| → ∞`, `Re ν > −1`:
/// `Γ(ν+1)/Γ(ν−μ+1) (2π(ν+1) sinh a)^{−1/2} (e^{(ν+1/2)a} + e^{−πi(μ−1/2)−(ν+1/2)a})`.
pub fn asymp_p_large_nu(nu: C, mu: C, a: f64) -> Result<C> {
    const OP: &str = "asymp_p_large_nu";
    check_a(OP, a)?;
    if !(nu.re > -1.0) {
        return Err(Error::Regime { op: OP, detail: format!("needs Re ν > −1, got {nu}") });
    }
    let lam = nu + 0.5;
    let ratio = ln_gamma(nu + 1.0) - ln_gamma(nu - mu + 1.0);
    let lead = ratio - 0.5 * (2.0 * PI * (nu + 1.0) * a.sinh()).ln();
    Ok((lead + lam * a).exp() + (lead - I * PI * (mu - 0.5) - lam * a).exp())
}

/// Leading term of `P_{−1/2+iρ}^μ(cosh a)` as `ρ → ∞`:
/// `ρ^{μ−1/2} √(2/(π sinh a)) cos(aρ + π(2μ−1)/4)`.
pub fn asymp_p_imag_degree(rho: f64, mu: C, a: f64) -> Result<C> {
    const OP: &str = "asymp_p_imag_degree";
    check_a(OP, a)?;
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(Error::Regime { op: OP, detail: format!("needs real ρ > 0, got {rho}") });
    }
    let amp = ((mu - 0.5) * rho.ln()).exp() * (2.0 / (PI * a.sinh())).sqrt();
    Ok(amp * (c(a * rho) + PI * 0.25 * (2.0 * mu - 1.0)).cos())
}

/// Leading term of `Q_ν^μ(cosh a)` as `|ν| → ∞` in `|arg ν| < π − δ`:
/// `√(π/(2 sinh a)) ν^{μ−1/2} e^{iμπ − a(ν+1/2)}`.
pub fn asymp_q_large_nu(nu: C, mu: C, a: f64) -> Result<C> {
    const OP: &str = "asymp_q_large_nu";
    check_a(OP, a)?;
    if nu == c(0.0) || nu.arg().abs() >= PI - SECTOR_MARGIN {
        return Err(Error::Regime { op: OP, detail: format!("arg ν must stay inside (−π + δ, π − δ), got ν = {nu}") });
    }
    let log = c(0.5 * (PI / (2.0 * a.sinh())).ln()) + (mu - 0.5) * nu.ln() + I * mu * PI - a * (nu + 0.5);
    Ok(log.exp())
}

fn check_pair(op: &'static str, z: f64, omega: f64) -> Result<TildePair> {
    TildePair::new(z, omega).map_err(|_| domain(op, format!("need z, ω ∈ (1, ∞), got z = {z}, ω = {omega}")))
}

/// Leading term of `e^{−iπμ} P_ν^{−μ}(ω) Q_ν^μ(z)` as `|μ| → ∞`, `Re μ > −1/2`:
/// `e^{−ω̃μ}/(2μ) (e^{μz̃} + e^{iπ(ν+1)} e^{−μz̃})`.
pub fn product_asymp_mu(nu: C, z: f64, omega: f64, mu: C) -> Result<C> {
    let t = check_pair("product_asymp_mu", z, omega)?;
    let e1 = (mu * (t.z_tilde - t.omega_tilde)).exp();
    let e2 = (I * PI * (nu + 1.0) - mu * (t.z_tilde + t.omega_tilde)).exp();
    Ok((e1 + e2) / (2.0 * mu))
}

/// Leading term of `sin(πiρ)/π · Q_ν^{−iρ}(z) Q_ν^{iρ}(ω)` as `ρ → ∞`:
/// `(i/ρ) cos(z̃ρ − π(ν+1)/2) cos(ω̃ρ − π(ν+1)/2)`.
pub fn product_asymp_rho(nu: C, z: f64, omega: f64, rho: f64) -> Result<C> {
    let t = check_pair("product_asymp_rho", z, omega)?;
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(domain("product_asymp_rho", format!("needs real ρ > 0, got {rho}")));
    }
    let shift = PI * 0.5 * (nu + 1.0);
    Ok(I / rho * (c(t.z_tilde * rho) - shift).cos() * (c(t.omega_tilde * rho) - shift).cos())
}

/// Windowed relative deviation of an oscillating expansion.
///
/// Returns `√(mean (ρ'|exact − lead|/env)²)/ρ` over `n` equispaced `ρ' ∈ [ρ, ρ + window)`,
/// which scales like the `O(1/ρ)` correction even across zeros of the leading term.
pub fn windowed_deviation<E, L, V>(exact: E, lead: L, envelope: V, rho: f64, window: f64, n: usize) -> Result<f64>
where
    E: Fn(f64) -> Result<C>,
    L: Fn(f64) -> Result<C>,
    V: Fn(f64) -> f64,
{
    let mut acc = 0.0;
    for k in 0..n {
        let r = rho + window * k as f64 / n as f64;
        let d = (exact(r)? - lead(r)?).norm() / envelope(r) * r;
        acc += d * d;
    }
    Ok((acc / n as f64).sqrt() / rho)
}
