//! Quadrature rule for the Mehler-type integral
//!
//! `P_{λ−1/2}^{−m}(cosh t) = √2 / (√π sinhᵐ t Γ(1/2+m)) ∫_0^t cosh(λx) (cosh t − cosh x)^{m−1/2} dx`,
//! valid for `Re m > −1/2` and every complex `λ`.
//!
//! With `u = t − x` the weight is `D(u)^{m−1/2}`, `D(u) = 2 sinh(t − u/2) sinh(u/2)`.
//! Near `u = 0` the substitution `u = δe^{−y}` resolves the algebraic endpoint; the
//! remaining `[0, u_min]` piece is integrated analytically. Nodes and weights
//! depend only on `(t, m)` and the bandwidth, so one rule serves many `λ`.

use crate::error::{domain, Result};
use crate::quadrature::gl16;
use crate::scalar::{c, ln_gamma, Scaled, C, ZERO};
use std::f64::consts::PI;

const U_MIN_FACTOR: f64 = 1e-9;
const MAX_NODES: usize = 200_000;

/// Precomputed nodes `x_i` and weights for fixed `(t, m)`.
#[derive(Debug, Clone)]
pub(crate) struct MehlerRule {
    t: f64,
    x: Vec<f64>,
    w: Vec<C>,
    log: C,
}

impl MehlerRule {
    /// Builds the rule; `bandwidth` bounds `|λ|` (and `|Im λ|` oscillation) of later evaluations.
    pub fn new(t: f64, m: C, bandwidth: f64) -> Result<Self> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(domain("mehler_rule", format!("t = {t} must be positive")));
        }
        if !(m.re > -0.5) {
            return Err(domain("mehler_rule", format!("order m = {m} needs Re m > −1/2")));
        }
        let bw = bandwidth.max(1.0);
        let beta = m - 0.5;
        let ab = beta.norm();
        let gl = gl16();
        let d = |u: f64| 2.0 * (t - 0.5 * u).sinh() * (0.5 * u).sinh();
        let mut x = Vec::new();
        let mut lw: Vec<C> = Vec::new();
        let push = |xi: f64, wi: f64, du: f64, x: &mut Vec<f64>, lw: &mut Vec<C>| {
            x.push(xi);
            lw.push(c(wi.ln()) + beta * du.ln());
        };

        let delta = (0.5 * t).min(1.0 / bw);
        let u_min = U_MIN_FACTOR * delta;
        // endpoint piece: u = δ e^{−y}, y ∈ [0, Y]
        let y_end = (delta / u_min).ln();
        let hy = 1f64.min(2.0 / (1.0 + beta.im.abs())).min(4.0 / (1.0 + ab));
        let ny = (y_end / hy).ceil() as usize;
        let hy = y_end / ny as f64;
        for k in 0..ny {
            let (ya, yb) = (k as f64 * hy, (k + 1) as f64 * hy);
            let (cm, hr) = (0.5 * (ya + yb), 0.5 * (yb - ya));
            for (g, gw) in gl.nodes.iter().zip(&gl.weights) {
                let y = cm + hr * g;
                let u = delta * (-y).exp();
                push(t - u, gw * hr * u, d(u), &mut x, &mut lw);
            }
        }
        // body: panels whose width follows the local scale of the weight and of cosh(λx)
        let mut u = delta;
        while u < t {
            let xm = t - u;
            let du = d(u);
            let slope = ab * xm.sinh() / du;
            let curv = (du / ((ab + 1.0) * xm.cosh())).sqrt();
            let scale_im = 1f64.min(3.0 / (1.0 + beta.im.abs()));
            let h = (u * scale_im).min(4.0 / bw).min(4.0 / (1.0 + slope)).min(3.0 * curv).min(t - u);
            let h = if t - u - h < 1e-3 * h { t - u } else { h };
            let (cm, hr) = (u + 0.5 * h, 0.5 * h);
            for (g, gw) in gl.nodes.iter().zip(&gl.weights) {
                let uu = cm + hr * g;
                push(t - uu, gw * hr, d(uu), &mut x, &mut lw);
            }
            u += h;
            if x.len() > MAX_NODES {
                return Err(domain("mehler_rule", "too many nodes"));
            }
        }
        // analytic piece on [0, u_min] where D(u) ≈ sinh(t)·u
        x.push(t);
        lw.push(beta * t.sinh().ln() + (beta + 1.0) * u_min.ln() - (beta + 1.0).ln());

        let lmax = lw.iter().map(|l| l.re).fold(f64::NEG_INFINITY, f64::max);
        let w = lw.iter().map(|l| (l - lmax).exp()).collect();
        let pref = c(0.5 * 2f64.ln() - 0.5 * PI.ln()) - m * t.sinh().ln() - ln_gamma(m + 0.5);
        Ok(MehlerRule { t, x, w, log: pref + lmax })
    }

    /// `P_{λ−1/2}^{−m}(cosh t)` in scaled form.
    pub fn eval(&self, lambda: C) -> Scaled {
        let shift = lambda.re.abs() * self.t;
        let mut acc = ZERO;
        for (xi, wi) in self.x.iter().zip(&self.w) {
            let e1 = (lambda * *xi - shift).exp();
            let e2 = (-lambda * *xi - shift).exp();
            acc += wi * (e1 + e2) * 0.5;
        }
        Scaled { mant: acc, log: self.log + shift }
    }

    /// `P_{−1/2+iρ}^{−m}(cosh t)` for real `ρ`.
    pub fn eval_cos(&self, rho: f64) -> Scaled {
        let mut acc = ZERO;
        for (xi, wi) in self.x.iter().zip(&self.w) {
            acc += wi * (rho * xi).cos();
        }
        Scaled { mant: acc, log: self.log }
    }

    #[cfg(test)]
    pub fn len(&self) -> usize {
        self.x.len()
    }
}
