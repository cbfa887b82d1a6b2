//! Globally adaptive Gauss–Kronrod (10/21) integration on finite intervals.

use super::gauss::{WG, WGK, XGK};
use super::{Estimate, QuadratureConfig};
use crate::error::{precondition, Error, Result};
use crate::scalar::{C, ZERO};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Which endpoint of an interval carries a singularity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Endpoint {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: C,
    err: f64,
    floor: f64,
}

impl PartialEq for Panel {
    fn eq(&self, o: &Self) -> bool {
        self.err == o.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Panel {
    fn cmp(&self, o: &Self) -> Ordering {
        self.err.total_cmp(&o.err)
    }
}

/// One 21-point Kronrod evaluation with the embedded Gauss rule.
///
/// Returns the value, the error `|K − G|` and a rounding floor proportional to `∫|f|`.
pub(crate) fn gk21<F: FnMut(f64) -> Result<C>>(f: &mut F, a: f64, b: f64) -> Result<(C, f64, f64)> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c)?;
    let mut k = fc * WGK[10];
    let mut abs = fc.norm() * WGK[10];
    let mut g = ZERO;
    for j in 0..10 {
        let dx = h * XGK[j];
        let (f1, f2) = (f(c - dx)?, f(c + dx)?);
        let s = f1 + f2;
        k += s * WGK[j];
        abs += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            g += s * WG[j / 2];
        }
    }
    let (k, g) = (k * h, g * h);
    let err = (k - g).norm();
    if !(k.re.is_finite() && k.im.is_finite()) {
        return Err(Error::Domain { op: "integrate", detail: format!("integrand not finite on [{a}, {b}]") });
    }
    Ok((k, err, 50.0 * f64::EPSILON * abs * h.abs()))
}

/// Pairwise sum for reproducible accumulation.
pub(crate) fn pairwise(v: &[C]) -> C {
    match v.len() {
        0 => ZERO,
        1 => v[0],
        n => pairwise(&v[..n / 2]) + pairwise(&v[n / 2..]),
    }
}

/// Adaptive integration of a fallible integrand over consecutive panels `points[i]..points[i+1]`.
pub fn integrate_panels<F: FnMut(f64) -> Result<C>>(mut f: F, points: &[f64], cfg: &QuadratureConfig) -> Result<Estimate> {
    cfg.validate()?;
    let mut heap = BinaryHeap::new();
    for w in points.windows(2) {
        if !(w[0] < w[1]) {
            if w[0] == w[1] {
                continue;
            }
            return Err(precondition("integrate_finite", format!("breakpoints not increasing: {} ≥ {}", w[0], w[1])));
        }
        let (value, err, floor) = gk21(&mut f, w[0], w[1])?;
        heap.push(Panel { a: w[0], b: w[1], value, err, floor });
    }
    let total = |heap: &BinaryHeap<Panel>| {
        let mut ps: Vec<Panel> = heap.iter().copied().collect();
        ps.sort_by(|x, y| x.a.total_cmp(&y.a));
        let vals: Vec<C> = ps.iter().map(|p| p.value).collect();
        let errs: f64 = ps.iter().map(|p| p.err).sum();
        let floor: f64 = ps.iter().map(|p| p.floor).sum();
        (pairwise(&vals), errs, floor)
    };
    let mut splits = 0;
    loop {
        let (value, raw, floor) = total(&heap);
        let err = raw + floor;
        // below the rounding floor further bisection cannot help
        if raw <= cfg.abs_tol.max(cfg.rel_tol * value.norm()).max(floor) {
            return Ok(Estimate { value, err_est: err });
        }
        if splits >= cfg.max_subdivisions {
            return Err(Error::SubdivisionLimit { value, err_est: err });
        }
        let Some(worst) = heap.pop() else {
            return Ok(Estimate { value, err_est: err });
        };
        let m = 0.5 * (worst.a + worst.b);
        if !(worst.a < m && m < worst.b) {
            return Err(Error::SubdivisionLimit { value, err_est: err });
        }
        let (v1, e1, f1) = gk21(&mut f, worst.a, m)?;
        let (v2, e2, f2) = gk21(&mut f, m, worst.b)?;
        heap.push(Panel { a: worst.a, b: m, value: v1, err: e1, floor: f1 });
        heap.push(Panel { a: m, b: worst.b, value: v2, err: e2, floor: f2 });
        splits += 1;
    }
}

/// `∫_a^b f(x) dx` by globally adaptive Gauss–Kronrod quadrature.
///
/// Errors with [`Error::SubdivisionLimit`], carrying the best estimate, when the
/// tolerance is not met within `cfg.max_subdivisions` bisections.
pub fn integrate_finite<F: Fn(f64) -> C>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<Estimate> {
    integrate_finite_fallible(|x| Ok(f(x)), a, b, cfg)
}

/// [`integrate_finite`] for integrands that can fail.
pub fn integrate_finite_fallible<F: FnMut(f64) -> Result<C>>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<Estimate> {
    if !(a.is_finite() && b.is_finite()) || a > b {
        return Err(precondition("integrate_finite", format!("need finite a ≤ b, got [{a}, {b}]")));
    }
    if a == b {
        return Ok(Estimate { value: ZERO, err_est: 0.0 });
    }
    integrate_panels(f, &[a, b], cfg)
}

/// `∫_a^b f(x) dx` for `f ~ (x − end)^exponent` at the flagged end, `exponent > −1`.
///
/// Uses `x = end ± (b−a)·v^{1/(1+exponent)}`, which makes the transformed integrand bounded.
pub fn integrate_endpoint_singular<F: Fn(f64) -> C>(
    f: F,
    a: f64,
    b: f64,
    exponent: f64,
    which_end: Endpoint,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    integrate_endpoint_singular_fallible(|x| Ok(f(x)), a, b, exponent, which_end, cfg)
}

/// [`integrate_endpoint_singular`] for integrands that can fail.
pub fn integrate_endpoint_singular_fallible<F: FnMut(f64) -> Result<C>>(
    mut f: F,
    a: f64,
    b: f64,
    exponent: f64,
    which_end: Endpoint,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    if !(exponent > -1.0) {
        return Err(precondition("integrate_endpoint_singular", format!("exponent {exponent} must exceed −1")));
    }
    if !(a.is_finite() && b.is_finite()) || a > b {
        return Err(precondition("integrate_endpoint_singular", format!("need finite a ≤ b, got [{a}, {b}]")));
    }
    let len = b - a;
    let p = 1.0 / (1.0 + exponent);
    let g = move |v: f64| -> Result<C> {
        if v <= 0.0 {
            return Ok(ZERO);
        }
        let s = len * v.powf(p);
        let jac = len * p * v.powf(p - 1.0);
        let x = match which_end {
            Endpoint::Left => a + s,
            Endpoint::Right => b - s,
        };
        Ok(f(x)? * jac)
    };
    integrate_finite_fallible(g, 0.0, 1.0, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;
    use std::f64::consts::PI;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn finite_examples() {
        let r = integrate_finite(|x| c(x), 0.0, 1.0, &cfg()).unwrap();
        assert!((r.value - 0.5).norm() < 1e-15);
        let r = integrate_finite(|x| c(x.sin()), 0.0, PI, &cfg()).unwrap();
        assert!((r.value - 2.0).norm() < 1e-13);
    }

    #[test]
    fn finite_against_trapezoid_oracle() {
        let f = |t: f64| t.sin().powi(3) / (2.0 + t.cos()).powi(2);
        let n = 1_000_000;
        let h = PI / n as f64;
        // endpoints vanish, so the trapezoid sum is the interior sum
        let trap: f64 = (1..n).map(|k| f(k as f64 * h)).sum::<f64>() * h;
        let r = integrate_finite(|t| c(f(t)), 0.0, PI, &cfg()).unwrap();
        assert!((r.value.re - trap).abs() < 1e-9);
        assert!(r.err_est <= 1e-9);
    }

    #[test]
    fn endpoint_singular_examples() {
        let r = integrate_endpoint_singular(|x| c(x.powf(-0.5)), 0.0, 1.0, -0.5, Endpoint::Left, &cfg()).unwrap();
        assert!((r.value - 2.0).norm() < 1e-12);
        let r = integrate_endpoint_singular(|x| c(x.powf(-0.5) * (1.0 + x)), 0.0, 1.0, -0.5, Endpoint::Left, &cfg())
            .unwrap();
        assert!((r.value - (2.0 + 2.0 / 3.0)).norm() < 1e-12);
        // Σ_k B(k+1, 1/2)/k! with B(k+1, 1/2) = 2·(2k)!!/(2k+1)!!
        let mut beta = 2.0;
        let mut fact = 1.0;
        let mut oracle = 0.0;
        for k in 0..40 {
            if k > 0 {
                beta *= k as f64 / (k as f64 + 0.5);
                fact *= k as f64;
            }
            oracle += beta / fact;
        }
        let r = integrate_endpoint_singular(|x| c((1.0 - x).powf(-0.5) * x.exp()), 0.0, 1.0, -0.5, Endpoint::Right, &cfg())
            .unwrap();
        assert!((r.value.re - oracle).abs() < 1e-11, "{} vs {oracle}", r.value);
    }

    #[test]
    fn subdivision_limit_carries_estimate() {
        let tight = QuadratureConfig { max_subdivisions: 1, rel_tol: 1e-15, abs_tol: 1e-300, ..cfg() };
        let e = integrate_finite(|x| c((50.0 * x).sin().abs()), 0.0, 1.0, &tight).unwrap_err();
        assert!(matches!(e, Error::SubdivisionLimit { .. }));
    }

    #[test]
    fn rejects_reversed_interval() {
        assert!(integrate_finite(|x| c(x), 1.0, 0.0, &cfg()).is_err());
    }
}
