//! Fixed Talbot inversion of the Laplace transform.

use crate::error::{precondition, Result};
use crate::scalar::{c, C, I, ONE};
use std::f64::consts::PI;

/// Settings of the Talbot contour.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaplaceInversionConfig {
    /// Number of contour nodes `M` (even, at least 8).
    pub node_count: usize,
    /// Contour scale `r`; `None` selects `2M/(5t)`.
    pub contour_scale: Option<f64>,
    /// Node count of the self-check run; `None` disables the check.
    pub check_node_count: Option<usize>,
}

impl Default for LaplaceInversionConfig {
    fn default() -> Self {
        LaplaceInversionConfig { node_count: 24, contour_scale: None, check_node_count: Some(32) }
    }
}

impl LaplaceInversionConfig {
    pub fn validate(&self) -> Result<()> {
        if self.node_count < 8 || self.node_count % 2 == 1 {
            return Err(precondition("invert_laplace", format!("node_count {} must be even and ≥ 8", self.node_count)));
        }
        if let Some(r) = self.contour_scale {
            if !(r > 0.0) {
                return Err(precondition("invert_laplace", "contour_scale must be positive"));
            }
        }
        Ok(())
    }
}

/// Inverse Laplace transform value with the spread between two node counts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inversion {
    pub value: f64,
    pub err_est: f64,
}

/// Contour nodes `s_k` and weights `w_k` with `f(t) ≈ Re Σ w_k e^{s_k t} F(s_k)`.
pub fn talbot_nodes(m: usize, t: f64, scale: Option<f64>) -> Vec<(C, C)> {
    let r = scale.unwrap_or(2.0 * m as f64 / (5.0 * t));
    let mut out = Vec::with_capacity(m);
    out.push((c(r), c(0.5 * r / m as f64)));
    for k in 1..m {
        let th = k as f64 * PI / m as f64;
        let cot = th.cos() / th.sin();
        let s = C::new(r * th * cot, r * th);
        let sigma = th + (th * cot - 1.0) * cot;
        out.push((s, (ONE + I * sigma) * (r / m as f64)));
    }
    out
}

fn talbot_sum<F: FnMut(C) -> Result<C>>(f: &mut F, t: f64, m: usize, scale: Option<f64>) -> Result<f64> {
    let mut acc = 0.0;
    for (s, w) in talbot_nodes(m, t, scale) {
        acc += (w * (s * t).exp() * f(s)?).re;
    }
    Ok(acc)
}

/// `f(t)` from its Laplace transform `F`, analytic off `(−∞, 0]`.
///
/// Returns the `node_count` evaluation and, when configured, the difference to
/// a run with `check_node_count` nodes as the error estimate.
pub fn invert_laplace<F: FnMut(C) -> Result<C>>(mut f: F, t: f64, cfg: &LaplaceInversionConfig) -> Result<Inversion> {
    cfg.validate()?;
    if !(t > 0.0 && t.is_finite()) {
        return Err(precondition("invert_laplace", format!("t = {t} must be positive")));
    }
    let value = talbot_sum(&mut f, t, cfg.node_count, cfg.contour_scale)?;
    let err_est = match cfg.check_node_count {
        Some(m) if m != cfg.node_count => (talbot_sum(&mut f, t, m, cfg.contour_scale)? - value).abs(),
        _ => 0.0,
    };
    Ok(Inversion { value, err_est })
}

/// [`invert_laplace`] with the transform evaluated at all contour nodes concurrently.
///
/// Node values are summed in node order, so the result does not depend on scheduling.
pub fn invert_laplace_parallel<F: Fn(C) -> Result<C> + Sync>(f: F, t: f64, cfg: &LaplaceInversionConfig) -> Result<Inversion> {
    use rayon::prelude::*;
    cfg.validate()?;
    if !(t > 0.0 && t.is_finite()) {
        return Err(precondition("invert_laplace", format!("t = {t} must be positive")));
    }
    let sum = |m: usize| -> Result<f64> {
        let nodes = talbot_nodes(m, t, cfg.contour_scale);
        let vals: Vec<f64> = nodes.par_iter().map(|(s, w)| Ok((w * (s * t).exp() * f(*s)?).re)).collect::<Result<_>>()?;
        Ok(vals.iter().sum())
    };
    let value = sum(cfg.node_count)?;
    let err_est = match cfg.check_node_count {
        Some(m) if m != cfg.node_count => (sum(m)? - value).abs(),
        _ => 0.0,
    };
    Ok(Inversion { value, err_est })
}

/// Same as [`invert_laplace`] for the default quadrature-free configuration.
pub fn invert_laplace_default<F: FnMut(C) -> Result<C>>(f: F, t: f64) -> Result<Inversion> {
    invert_laplace(f, t, &LaplaceInversionConfig::default())
}


#[cfg(test)]
mod tests {
    use super::*;

    fn inv<F: FnMut(C) -> Result<C>>(f: F, t: f64) -> Inversion {
        invert_laplace_default(f, t).unwrap()
    }

    #[test]
    fn classical_pairs() {
        let e = (-1f64).exp();
        let r = inv(|s| Ok(ONE / (s + 1.0)), 1.0);
        assert!((r.value - e).abs() / e < 1e-8, "{}", r.value);
        let r = inv(|s| Ok(ONE / (s * s)), 2.5);
        assert!((r.value - 2.5).abs() / 2.5 < 1e-8);
        let want = 1.0 / PI.sqrt();
        let r = inv(|s| Ok(ONE / s.sqrt()), 1.0);
        assert!((r.value - want).abs() / want < 1e-8);
        assert!(r.err_est < 1e-8);
    }

    #[test]
    fn rejects_bad_config() {
        let cfg = LaplaceInversionConfig { node_count: 7, ..Default::default() };
        assert!(invert_laplace(|s| Ok(ONE / s), 1.0, &cfg).is_err());
        assert!(invert_laplace_default(|s| Ok(ONE / s), -1.0).is_err());
    }
}
