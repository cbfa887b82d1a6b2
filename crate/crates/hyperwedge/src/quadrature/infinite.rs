//! Integrals over `[start, ∞)`: exponentially decaying integrands by truncation,
//! and conditionally convergent oscillatory integrands by iterated averaging of
//! partial integrals.

use super::adaptive::integrate_panels;
use super::{Estimate, QuadratureConfig};
use crate::error::{non_convergence, precondition, Result};
use crate::scalar::{C, ZERO};

const CHUNK_MAX: usize = 400;
const SAMPLES: usize = 16;

/// `∫_0^∞ f(ρ) dρ` for `|f(ρ)| ≤ M e^{−rate·ρ}` eventually.
///
/// The integral is extended chunk by chunk; `M` is observed on each chunk and the
/// analytic tail `M e^{−rate·R}/rate` decides where to stop.
pub fn integrate_semi_infinite_decaying<F: Fn(f64) -> C>(f: F, decay_rate: f64, cfg: &QuadratureConfig) -> Result<Estimate> {
    integrate_semi_infinite_decaying_fallible(|x| Ok(f(x)), 0.0, decay_rate, cfg)
}

/// [`integrate_semi_infinite_decaying`] for fallible integrands, starting at `start`.
pub fn integrate_semi_infinite_decaying_fallible<F: FnMut(f64) -> Result<C>>(
    mut f: F,
    start: f64,
    decay_rate: f64,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    let rate = cfg.tail_decay_rate.unwrap_or(decay_rate);
    if !(rate > 0.0 && rate.is_finite()) {
        return Err(precondition("integrate_semi_infinite_decaying", format!("decay rate {rate} must be positive")));
    }
    let chunk = (4.0 / rate).max(1.0);
    let mut total = ZERO;
    let mut err = 0.0;
    let mut a = start;
    for _ in 0..CHUNK_MAX {
        let b = a + chunk;
        // later chunks only need accuracy relative to the running total
        let local = QuadratureConfig { abs_tol: cfg.abs_tol.max(0.1 * cfg.rel_tol * total.norm()), ..*cfg };
        let est = integrate_panels(&mut f, &[a, b], &local)?;
        total += est.value;
        err += est.err_est;
        // observed envelope constant on the chunk
        let mut m: f64 = 0.0;
        for k in 0..=SAMPLES {
            let x = a + chunk * k as f64 / SAMPLES as f64;
            m = m.max(f(x)?.norm() * (rate * (x - b)).exp());
        }
        let tail = m / rate;
        a = b;
        if tail <= cfg.abs_tol.max(0.1 * cfg.rel_tol * total.norm()) {
            return Ok(Estimate { value: total, err_est: err + tail });
        }
    }
    Err(non_convergence("integrate_semi_infinite_decaying", format!("tail not below tolerance at ρ = {a}")))
}

/// `∫_start^∞ f(ρ) dρ` for `|f(ρ)| ≤ scale·e^{−rate·ρ}` on the whole range.
///
/// Truncates at the smallest `R` with `scale·e^{−rate·R}/rate` below the tolerance.
pub fn integrate_semi_infinite_bounded<F: FnMut(f64) -> Result<C>>(
    f: F,
    start: f64,
    rate: f64,
    scale: f64,
    panel: f64,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    if !(rate > 0.0) || !(scale >= 0.0) {
        return Err(precondition("integrate_semi_infinite_bounded", "rate must be positive and scale non-negative"));
    }
    let tol = cfg.abs_tol.max(1e-300);
    let r_end = if scale == 0.0 { start } else { start.max((scale / (rate * tol)).ln() / rate) };
    let tail = scale * (-rate * r_end).exp() / rate;
    let n = ((r_end - start) / panel.max(1e-3)).ceil().max(1.0) as usize;
    let points: Vec<f64> = (0..=n).map(|k| start + (r_end - start) * k as f64 / n as f64).collect();
    let est = integrate_panels(f, &points, cfg)?;
    Ok(Estimate { value: est.value, err_est: est.err_est + tail })
}

/// Running integral `I(R) = ∫_start^R f` evaluated at arbitrary increasing or
/// decreasing `R`; segments between cached points are integrated adaptively.
pub(crate) struct Cumulative<F> {
    f: F,
    points: Vec<(f64, C)>,
    panel: f64,
    cfg: QuadratureConfig,
    pub err: f64,
}

impl<F: FnMut(f64) -> Result<C>> Cumulative<F> {
    pub fn new(f: F, start: f64, panel: f64, cfg: &QuadratureConfig) -> Self {
        let cfg = QuadratureConfig { abs_tol: cfg.abs_tol * 1e-2, ..*cfg };
        Cumulative { f, points: vec![(start, ZERO)], panel, cfg, err: 0.0 }
    }

    pub fn at(&mut self, r: f64) -> Result<C> {
        let idx = self.points.partition_point(|p| p.0 <= r);
        let (x0, v0) = self.points[idx.saturating_sub(1)];
        if x0 == r {
            return Ok(v0);
        }
        let n = ((r - x0) / self.panel).ceil().max(1.0) as usize;
        let pts: Vec<f64> = (0..=n).map(|k| x0 + (r - x0) * k as f64 / n as f64).collect();
        let local = QuadratureConfig { abs_tol: self.cfg.abs_tol.max(1e-2 * self.cfg.rel_tol * v0.norm()), ..self.cfg };
        let est = integrate_panels(&mut self.f, &pts, &local)?;
        self.err += est.err_est;
        let v = v0 + est.value;
        self.points.insert(idx, (r, v));
        Ok(v)
    }
}

fn binomial_row(n: usize) -> Vec<f64> {
    let mut row = vec![1.0];
    for k in 1..=n {
        let prev = row[k - 1];
        row.push(prev * (n + 1 - k) as f64 / k as f64);
    }
    let s: f64 = row.iter().sum();
    row.iter().map(|x| x / s).collect()
}

/// Binomially weighted average of `I` over shifts `Σ_j k_j·h_j`, `k_j = 0..=n`.
pub(crate) fn averaged<F: FnMut(f64) -> Result<C>>(cum: &mut Cumulative<F>, r0: f64, halves: &[f64], n: usize) -> Result<C> {
    let w = binomial_row(n);
    let mut shifts = vec![(0.0, 1.0)];
    for &h in halves {
        let mut next = Vec::with_capacity(shifts.len() * (n + 1));
        for &(s, ws) in &shifts {
            for (k, wk) in w.iter().enumerate() {
                next.push((s + k as f64 * h, ws * wk));
            }
        }
        shifts = next;
    }
    shifts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut acc = ZERO;
    for (s, ws) in shifts {
        acc += cum.at(r0 + s)? * ws;
    }
    Ok(acc)
}

/// Maximum averaging depth.
pub(crate) const MAX_LEVEL: usize = 8;

/// Accelerated limit of `I(R)` from averaging at `r0` and `r1 > r0`.
///
/// Returns the level whose values at the two base points agree best, with
/// twice that disagreement as the error estimate.
pub(crate) fn accelerate<F: FnMut(f64) -> Result<C>>(
    cum: &mut Cumulative<F>,
    r0: f64,
    r1: f64,
    halves: &[f64],
) -> Result<Estimate> {
    let mut best: Option<Estimate> = None;
    let max_level = if halves.len() > 1 { MAX_LEVEL } else { 2 * MAX_LEVEL };
    for n in 0..=max_level {
        let a0 = averaged(cum, r0, halves, n)?;
        let a1 = averaged(cum, r1, halves, n)?;
        let e = 2.0 * (a1 - a0).norm();
        if best.is_none_or(|b| e < b.err_est) {
            best = Some(Estimate { value: a1, err_est: e });
        }
    }
    Ok(best.expect("at least one level"))
}

/// `∫_start^∞ f(ρ) dρ` for an oscillatory integrand with algebraic envelope
/// `ρ^{−envelope_decay}` and the given oscillation periods.
///
/// Partial integrals at half-period shifts are averaged repeatedly (a
/// multi-frequency Euler transform). The base point is doubled up to three
/// times; if the accelerated values still disagree by more than
/// `√rel_tol·max(1, |value|)` the integral is reported as non-convergent,
/// which is the behaviour of a non-decaying (divergent) mean.
pub fn integrate_oscillatory_tail<F: Fn(f64) -> C>(
    f: F,
    start: f64,
    envelope_decay: f64,
    periods: &[f64],
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    integrate_oscillatory_tail_fallible(|x| Ok(f(x)), start, envelope_decay, periods, cfg)
}

/// [`integrate_oscillatory_tail`] for fallible integrands.
pub fn integrate_oscillatory_tail_fallible<F: FnMut(f64) -> Result<C>>(
    f: F,
    start: f64,
    envelope_decay: f64,
    periods: &[f64],
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    if periods.is_empty() || periods.iter().any(|p| !(*p > 0.0 && p.is_finite())) {
        return Err(precondition("integrate_oscillatory_tail", "periods must be positive and finite"));
    }
    if !(envelope_decay >= 0.0) {
        return Err(precondition("integrate_oscillatory_tail", "envelope decay must be non-negative"));
    }
    let p_min = periods.iter().cloned().fold(f64::INFINITY, f64::min);
    let p_max = periods.iter().cloned().fold(0.0, f64::max);
    let halves: Vec<f64> = periods.iter().map(|p| 0.5 * p).collect();
    let mut cum = Cumulative::new(f, start, 0.5 * p_min, cfg);
    let mut r0 = start + (20.0 * p_max).max(40.0);
    let mut best: Option<Estimate> = None;
    for _ in 0..4 {
        let r1 = r0 + 2.0 * p_max;
        let est = accelerate(&mut cum, r0, r1, &halves)?;
        let est = Estimate { value: est.value, err_est: est.err_est + cum.err };
        if best.is_none_or(|b| est.err_est < b.err_est) {
            best = Some(est);
        }
        if est.err_est <= cfg.abs_tol.max(cfg.rel_tol * est.value.norm()) {
            return Ok(est);
        }
        r0 *= 2.0;
    }
    let best = best.expect("at least one attempt");
    if best.err_est <= cfg.rel_tol.sqrt() * best.value.norm().max(1.0) {
        Ok(best)
    } else {
        Err(non_convergence(
            "integrate_oscillatory_tail",
            format!("partial integrals do not settle (spread {:.3e}); the integral may diverge", best.err_est),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::scalar::c;
    use std::f64::consts::PI;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn decaying_examples() {
        let r = integrate_semi_infinite_decaying(|x| c((-x).exp()), 1.0, &cfg()).unwrap();
        assert!((r.value - 1.0).norm() < 1e-12);
        let r = integrate_semi_infinite_decaying(|x| c(x * (-2.0 * x).exp()), 1.5, &cfg()).unwrap();
        assert!((r.value - 0.25).norm() < 1e-12);
        let r = integrate_semi_infinite_decaying(|x| c((-x).exp() * x.cos()), 1.0, &cfg()).unwrap();
        assert!((r.value - 0.5).norm() < 1e-12);
        assert!(integrate_semi_infinite_decaying(|x| c(x), 0.0, &cfg()).is_err());
    }

    #[test]
    fn bounded_truncation() {
        let r = integrate_semi_infinite_bounded(|x| Ok(c((-x).exp())), 0.0, 1.0, 1.0, 2.0, &cfg()).unwrap();
        assert!((r.value - 1.0).norm() < 1e-12, "{:?}", r);
        assert!(r.err_est >= (r.value - 1.0).norm());
    }

    #[test]
    fn oscillatory_examples() {
        let f = |x: f64| c(if x == 0.0 { 1.0 } else { x.sin() / x });
        let r = integrate_oscillatory_tail(f, 0.0, 1.0, &[2.0 * PI], &cfg()).unwrap();
        assert!((r.value.re - PI / 2.0).abs() < 1e-9, "{}", r.value);
        assert!(r.err_est >= (r.value.re - PI / 2.0).abs());
        // ∫_1^∞ cos(x)/x dx = −Ci(1)
        let ci1 = 0.337_403_922_900_968_1;
        let r = integrate_oscillatory_tail(|x| c(x.cos() / x), 1.0, 1.0, &[2.0 * PI], &cfg()).unwrap();
        assert!((r.value.re + ci1).abs() < 1e-9, "{}", r.value);
        let e = integrate_oscillatory_tail(|x| c(x.cos().powi(2) / x), 1.0, 1.0, &[PI], &cfg()).unwrap_err();
        assert!(matches!(e, Error::NonConvergence { .. }));
    }

    #[test]
    fn two_frequency_product() {
        // ∫_0^∞ sin(2x) cos(x)/x dx = π/2
        let f = |x: f64| c(if x == 0.0 { 2.0 } else { (2.0 * x).sin() * x.cos() / x });
        let r = integrate_oscillatory_tail(f, 0.0, 1.0, &[2.0 * PI / 3.0, 2.0 * PI], &cfg()).unwrap();
        assert!((r.value.re - PI / 2.0).abs() < 1e-9, "{}", r.value);
    }
}
