//! The scaled product `S(ρ) = e^{πρ} Q_ν^{−iρ}(z) Q_ν^{iρ}(ω)` along the imaginary order axis.
//!
//! By Whipple's formula
//! `S(ρ) = (π/2) |Γ(ν+1+iρ)|²-type factor · (z²−1)^{−1/4}(ω²−1)^{−1/4} P_{−1/2+iρ}^{−ν−1/2}(cosh z̃) P_{−1/2+iρ}^{−ν−1/2}(cosh ω̃)`
//! with `z̃ = asinh(1/√(z²−1))`. Both Legendre factors come from cached Mehler rules, so
//! one evaluation costs two cosine sums.

use crate::error::{domain, Result};
use crate::legendre::asymptotics::tilde;
use crate::legendre::mehler::MehlerRule;
use crate::scalar::{c, ln_gamma, Scaled, C, I};
use std::f64::consts::PI;

const INITIAL_BANDWIDTH: f64 = 64.0;

/// Evaluator of `S(ρ)` for fixed `(ν, z, ω)`.
#[derive(Debug, Clone)]
pub(crate) struct ProductEvaluator {
    nu: C,
    z_tilde: f64,
    omega_tilde: f64,
    rule_z: MehlerRule,
    rule_w: MehlerRule,
    bandwidth: f64,
    log_const: f64,
}

impl ProductEvaluator {
    /// Requires `Re ν > −1` and `z, ω > 1`; `bandwidth` presizes the rules for `ρ ≤ bandwidth`.
    pub fn new(nu: C, z: f64, omega: f64, bandwidth: f64) -> Result<Self> {
        if !(nu.re > -1.0) {
            return Err(domain("product_evaluator", format!("Re ν = {} must exceed −1", nu.re)));
        }
        let z_tilde = tilde(z)?;
        let omega_tilde = tilde(omega)?;
        let bw = bandwidth.max(INITIAL_BANDWIDTH);
        let m = nu + 0.5;
        let rule_z = MehlerRule::new(z_tilde, m, bw)?;
        let rule_w = if omega == z { rule_z.clone() } else { MehlerRule::new(omega_tilde, m, bw)? };
        let log_const = (0.5 * PI).ln() - 0.25 * ((z - 1.0) * (z + 1.0)).ln() - 0.25 * ((omega - 1.0) * (omega + 1.0)).ln();
        Ok(ProductEvaluator { nu, z_tilde, omega_tilde, rule_z, rule_w, bandwidth: bw, log_const })
    }

    pub fn z_tilde(&self) -> f64 {
        self.z_tilde
    }

    pub fn omega_tilde(&self) -> f64 {
        self.omega_tilde
    }

    fn grow(&mut self, rho: f64) -> Result<()> {
        let bw = (2.0 * self.bandwidth).max(rho);
        let m = self.nu + 0.5;
        self.rule_z = MehlerRule::new(self.z_tilde, m, bw)?;
        self.rule_w = if self.omega_tilde == self.z_tilde {
            self.rule_z.clone()
        } else {
            MehlerRule::new(self.omega_tilde, m, bw)?
        };
        self.bandwidth = bw;
        Ok(())
    }

    /// `S(ρ)` for `ρ ≥ 0`.
    pub fn eval(&mut self, rho: f64) -> Result<C> {
        if rho > self.bandwidth {
            self.grow(rho)?;
        }
        let a = self.nu + 1.0;
        let log = ln_gamma(a + I * rho) + ln_gamma(a - I * rho) + c(PI * rho + self.log_const);
        let pz = self.rule_z.eval_cos(rho);
        let pw = self.rule_w.eval_cos(rho);
        Ok(Scaled::from_log(log).mul(pz).mul(pw).value())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::legendre::q_scaled;

    #[test]
    fn matches_direct_product() {
        for (nu, z, w) in [(c(0.0), 3.0, 2.0), (C::new(0.5, 0.5), 2.0, 1.5), (c(-0.6), 10.0, 1.2)] {
            let mut ev = ProductEvaluator::new(nu, z, w, 10.0).unwrap();
            for rho in [0.0, 0.7, 3.0, 9.5] {
                let direct = Scaled::from_log(c(PI * rho))
                    .mul(q_scaled(nu, C::new(0.0, -rho), c(z)).unwrap())
                    .mul(q_scaled(nu, C::new(0.0, rho), c(w)).unwrap())
                    .value();
                let s = ev.eval(rho).unwrap();
                assert!((s - direct).norm() <= 1e-10 * direct.norm(), "{nu} {z} {w} {rho}: {s} vs {direct}");
            }
        }
    }
}
