//! Both sides of the transform identity
//!
//! `(2/π) ∫_0^∞ sin(πiρ)/π · g(iρ) Q_ν^{−iρ}(z) Q_ν^{iρ}(ω) dρ
//!   = 2 Σ_{Re p > 0} Res(g; p) e^{−iπp} P_ν^{−p}(ω) Q_ν^p(z) + Res(g; 0) P_ν(ω) Q_ν(z)`
//!
//! for `1 < ω < z` and `Re ν > −1`. For poles of higher order the summand is the
//! residue of `g(s) e^{−iπs} P_ν^{−s}(ω) Q_ν^s(z)`.

use super::kernel::{check_decay_class, DecayClass, Envelope, KernelPole, MeromorphicKernel};
use super::product::ProductEvaluator;
use crate::error::{domain, non_convergence, precondition, Error, Result};
use crate::legendre::bounds::ln_bound_pq_product;
use crate::legendre::{p_scaled, q_scaled};
use crate::quadrature::{
    averaged, integrate_oscillatory_tail_fallible, integrate_semi_infinite_decaying_fallible, Cumulative, Estimate,
    QuadratureConfig,
};
use crate::scalar::{c, Scaled, C, I, ZERO};
use std::f64::consts::PI;

/// Tolerances for [`transform_lhs`] and [`transform_rhs`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformConfig {
    pub quadrature: QuadratureConfig,
    /// Relative accuracy requested from the residue series.
    pub series_rel_tol: f64,
    /// Poles beyond this modulus are never summed; reaching it without meeting
    /// the tolerance is a non-convergence error.
    pub pole_radius: f64,
}

impl Default for TransformConfig {
    fn default() -> Self {
        TransformConfig {
            quadrature: QuadratureConfig { rel_tol: 1e-10, abs_tol: 1e-15, max_subdivisions: 4000, tail_decay_rate: None },
            series_rel_tol: 1e-13,
            pole_radius: 5000.0,
        }
    }
}

/// Kernel and parameters of one transform evaluation.
#[derive(Debug, Clone, Copy)]
pub struct TransformRequest<'a> {
    pub kernel: &'a dyn MeromorphicKernel,
    pub nu: C,
    pub z: f64,
    pub omega: f64,
}

/// Value of the residue series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesEstimate {
    pub value: C,
    /// Estimated modulus of the omitted terms.
    pub tail_estimate: f64,
    /// Number of residues summed.
    pub terms: usize,
    /// Whether the tail is covered by a rigorous bound rather than an extrapolation.
    pub certified: bool,
}

/// Both sides of the identity and their discrepancy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformReport {
    pub lhs: C,
    pub lhs_err: f64,
    pub rhs: C,
    pub tail: f64,
    pub terms: usize,
    pub certified: bool,
    /// `|lhs − rhs|/max(1, |rhs|)`.
    pub residual: f64,
}

fn check_point(op: &'static str, z: f64, omega: f64) -> Result<()> {
    if !(z > 1.0 && omega > 1.0 && z.is_finite() && omega.is_finite()) {
        return Err(domain(op, format!("need z, ω ∈ (1, ∞), got z = {z}, ω = {omega}")));
    }
    Ok(())
}

fn check_degree(op: &'static str, nu: C) -> Result<()> {
    if !(nu.re > -1.0) || !nu.im.is_finite() {
        return Err(domain(op, format!("Re ν = {} must exceed −1", nu.re)));
    }
    Ok(())
}

/// `(2/π) ∫_0^∞ sin(πiρ)/π · g(iρ) Q_ν^{−iρ}(z) Q_ν^{iρ}(ω) dρ`.
///
/// Fails with [`Error::Divergent`] for a type II kernel at `z = ω`.
pub fn transform_lhs(req: &TransformRequest<'_>, cfg: &TransformConfig) -> Result<Estimate> {
    const OP: &str = "transform_lhs";
    check_point(OP, req.z, req.omega)?;
    check_degree(OP, req.nu)?;
    check_decay_class(req.kernel)?;
    let type2 = matches!(req.kernel.decay_class(), DecayClass::TypeII(_));
    if type2 && req.z == req.omega {
        return Err(Error::Divergent { op: OP, detail: "type II kernel with z = ω".into() });
    }
    let mut ev = ProductEvaluator::new(req.nu, req.z, req.omega, 64.0)?;
    let delta = (ev.omega_tilde() - ev.z_tilde()).abs();
    let sigma = ev.omega_tilde() + ev.z_tilde();
    let kernel = req.kernel;
    let f = move |rho: f64| -> Result<C> { Ok(kernel.weight(rho) * ev.eval(rho)?) };
    let qc = &cfg.quadrature;
    let est = match kernel.envelope() {
        Envelope::Exponential { rate, .. } => integrate_semi_infinite_decaying_fallible(f, 0.0, rate, qc)?,
        Envelope::Algebraic { power } if delta > 0.0 => {
            integrate_oscillatory_tail_fallible(f, 0.0, power + 1.0, &[2.0 * PI / delta, 2.0 * PI / sigma], qc)?
        }
        Envelope::Algebraic { power } => coincident_points(f, power + 1.0, sigma, qc)?,
    };
    Ok(Estimate { value: est.value * (2.0 / PI), err_est: est.err_est * (2.0 / PI) })
}

/// Integral of `f ~ ρ^{−decay}(A + B cos(Σρ + φ))` for `decay > 1`: the partial integrals
/// are averaged over the period `2π/Σ` and extrapolated in `R^{1−decay}`, `R^{−decay}`.
fn coincident_points<F: FnMut(f64) -> Result<C>>(f: F, decay: f64, sigma: f64, cfg: &QuadratureConfig) -> Result<Estimate> {
    const OP: &str = "transform_lhs";
    if !(decay > 1.0) {
        return Err(Error::Divergent { op: OP, detail: format!("integrand decays like ρ^(−{decay})") });
    }
    let period = 2.0 * PI / sigma;
    let half = [0.5 * period];
    let mut cum = Cumulative::new(f, 0.0, 0.5 * period, cfg);
    let r0 = (20.0 * period).max(40.0);
    let rs = [r0, 2.0 * r0, 4.0 * r0, 8.0 * r0];
    let mut a = [ZERO; 4];
    for (ai, r) in a.iter_mut().zip(rs) {
        *ai = averaged(&mut cum, r, &half, 10)?;
    }
    let (e1, e2) = (decay - 1.0, decay);
    // weights w with Σw = 1, Σ w R^{−e1} = Σ w R^{−e2} = 0
    let extrapolate = |rs: &[f64], a: &[C]| {
        let m = [[1.0, 1.0, 1.0], [0, 1, 2].map(|j| rs[j].powf(-e1)), [0, 1, 2].map(|j| rs[j].powf(-e2))];
        let det3 = |m: [[f64; 3]; 3]| {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        };
        let d = det3(m);
        let mut value = ZERO;
        for j in 0..3 {
            let mut mj = m;
            for (row, rhs) in mj.iter_mut().zip([1.0, 0.0, 0.0]) {
                row[j] = rhs;
            }
            value += a[j] * (det3(mj) / d);
        }
        value
    };
    let value = extrapolate(&rs[1..], &a[1..]);
    let coarse = extrapolate(&rs[..3], &a[..3]);
    let err = (value - coarse).norm() + cum.err;
    if err > cfg.rel_tol.sqrt() * value.norm().max(1.0) {
        return Err(non_convergence(OP, format!("extrapolation spread {err:.3e}")));
    }
    Ok(Estimate { value, err_est: err })
}

/// `e^{−iπs} P_ν^{−s}(ω) Q_ν^s(z)`.
fn pole_factor(nu: C, s: C, z: f64, omega: f64) -> Result<Scaled> {
    let p = p_scaled(nu, -s, c(omega))?;
    let q = q_scaled(nu, s, c(z))?;
    Ok(Scaled::from_log(-I * PI * s).mul(p).mul(q))
}

/// `Res(g·h; p)` at a pole of order ≥ 2 by the trapezoidal rule on a small circle.
fn pole_term(req: &TransformRequest<'_>, pole: &KernelPole, neighbours: f64) -> Result<C> {
    // distance to the poles −ν−1−k of Q_ν^s(z) and to −p
    let mut dist = (2.0 * pole.at.re).min(1.0).min(neighbours);
    let shift = pole.at + req.nu + 1.0;
    let kmax = (shift.re.abs() + 2.0).ceil() as usize;
    for k in 0..=kmax {
        dist = dist.min((shift + k as f64).norm());
    }
    let r = 0.3 * dist;
    const N: usize = 32;
    let mut acc = ZERO;
    for j in 0..N {
        let e = C::from_polar(r, 2.0 * PI * j as f64 / N as f64);
        let s = pole.at + e;
        acc += req.kernel.eval(s) * pole_factor(req.nu, s, req.z, req.omega)?.value() * e;
    }
    Ok(acc / N as f64)
}

/// Geometry of the residue series for `ω = cosh a < z = cosh b`.
struct SeriesTail {
    a: f64,
    b: f64,
    /// `Δ = ln(tanh(b/2)/tanh(a/2))`, the decay rate of `|P_ν^{−p}(ω) Q_ν^p(z)|` in `p`.
    delta: f64,
    /// Length of the pole window listed beyond the last summed pole.
    listing: f64,
    /// `2 coth(b) sinh(a/2)`.
    bound_ratio: f64,
    /// Whether the rigorous product bound applies.
    use_bound: bool,
}

impl SeriesTail {
    fn new(nu: C, z: f64, omega: f64) -> Self {
        let (a, b) = (omega.acosh(), z.acosh());
        let delta = ((0.5 * b).tanh() / (0.5 * a).tanh()).ln();
        let bound_ratio = 2.0 / b.tanh() * (0.5 * a).sinh();
        SeriesTail { a, b, delta, listing: 40.0 / delta, bound_ratio, use_bound: nu.im == 0.0 && nu.re > 0.0 && bound_ratio < 1.0 }
    }

    /// `ln(|h(p)|·2|p|·e^{Re p·Δ})`, the amplitude of the asymptotic form `A e^{−pΔ}/(2p)`.
    fn amplitude(&self, h: Scaled, p: C) -> f64 {
        h.ln_abs() + (2.0 * p.norm()).ln() + p.re * self.delta
    }

    /// Rigorous bound on the poles beyond `last`, when the product bound applies.
    fn certified(&self, kernel: &dyn MeromorphicKernel, nu: C, last: f64) -> Result<Option<f64>> {
        if !self.use_bound {
            return Ok(None);
        }
        let ahead = poles_beyond(kernel, last, self.listing)?;
        if ahead.iter().any(|q| q.at.im != 0.0) {
            return Ok(None);
        }
        let mut bound = 0.0;
        for q in &ahead {
            bound += 2.0 * q.residue.norm() * ln_bound_pq_product(nu.re, q.at.re, self.a, self.b, 1f64.min(q.at.re))?.exp();
        }
        // geometric remainder beyond the listing
        bound *= 1.0 + self.bound_ratio.powf(self.listing) / (1.0 - self.bound_ratio);
        Ok(Some(bound))
    }

    /// Extrapolated modulus of the poles beyond `last` from the log-amplitude `amp`,
    /// with a safety factor of two.
    fn extrapolated(&self, kernel: &dyn MeromorphicKernel, amp: f64, last: f64) -> Result<f64> {
        let mut tail = 0.0;
        for q in poles_beyond(kernel, last, self.listing)? {
            tail += 2.0 * q.residue.norm() * (amp - q.at.re * self.delta).exp() / (2.0 * q.at.norm());
        }
        Ok(2.0 * tail)
    }
}

fn poles_beyond(kernel: &dyn MeromorphicKernel, last: f64, listing: f64) -> Result<Vec<KernelPole>> {
    Ok(kernel.poles_in(last + listing)?.into_iter().filter(|q| q.at.norm() > last).collect())
}

fn check_series(op: &'static str, req: &TransformRequest<'_>) -> Result<()> {
    check_point(op, req.z, req.omega)?;
    check_degree(op, req.nu)?;
    if !(req.omega < req.z) {
        return Err(precondition(op, format!("the residue series needs ω < z, got ω = {}, z = {}", req.omega, req.z)));
    }
    Ok(())
}

fn zero_term(req: &TransformRequest<'_>) -> Result<C> {
    let r0 = req.kernel.residue_at_zero();
    if r0 == ZERO {
        return Ok(ZERO);
    }
    Ok(r0 * pole_factor(req.nu, ZERO, req.z, req.omega)?.value())
}

/// `2 Res(g·h; p)` together with `h(p)`.
fn summand(req: &TransformRequest<'_>, pole: &KernelPole, all: &[KernelPole]) -> Result<(C, Scaled)> {
    let h = pole_factor(req.nu, pole.at, req.z, req.omega)?;
    if pole.order == 1 {
        return Ok((2.0 * pole.residue * h.value(), h));
    }
    let gap = all.iter().filter(|q| q.at != pole.at).map(|q| 0.5 * (q.at - pole.at).norm()).fold(f64::INFINITY, f64::min);
    Ok((2.0 * pole_term(req, pole, gap)?, h))
}

/// `2 Σ_p Res(g; p) e^{−iπp} P_ν^{−p}(ω) Q_ν^p(z) + Res(g; 0) P_ν(ω) Q_ν(z)` for `1 < ω < z`.
///
/// Infinite pole families are summed by increasing modulus until the estimated tail
/// drops below a tenth of the requested accuracy. The tail is extrapolated from the
/// observed geometric decay `e^{−pΔ}/p`, `Δ = ln(tanh(b/2)/tanh(a/2))`, `ω = cosh a`,
/// `z = cosh b`; for real `ν > 0` with `2 coth(b) sinh(a/2) < 1` the rigorous bound for
/// `|P_ν^{−μ}(cosh a) Q_ν^μ(cosh b)|` is tried first.
pub fn transform_rhs(req: &TransformRequest<'_>, cfg: &TransformConfig) -> Result<SeriesEstimate> {
    const OP: &str = "transform_rhs";
    check_series(OP, req)?;
    let kernel = req.kernel;
    let mut sum = zero_term(req)?;
    if kernel.finite_poles() {
        let poles = kernel.poles_in(f64::INFINITY)?;
        for p in &poles {
            sum += summand(req, p, &poles)?.0;
        }
        return Ok(SeriesEstimate { value: sum, tail_estimate: 0.0, terms: poles.len(), certified: true });
    }
    let geo = SeriesTail::new(req.nu, req.z, req.omega);
    let poles = kernel.poles_in(cfg.pole_radius)?;
    let mut amplitudes: Vec<f64> = Vec::new();
    for (done, p) in poles.iter().enumerate() {
        let window = &poles[done.saturating_sub(1)..(done + 2).min(poles.len())];
        let (t, h) = summand(req, p, window)?;
        sum += t;
        amplitudes.push(geo.amplitude(h, p.at));
        if amplitudes.len() < 3 {
            continue;
        }
        let tol = 0.1 * cfg.series_rel_tol * sum.norm().max(1.0);
        let last = p.at.norm();
        if let Some(bound) = geo.certified(kernel, req.nu, last)? {
            if bound < tol {
                return Ok(SeriesEstimate { value: sum, tail_estimate: bound, terms: done + 1, certified: true });
            }
        }
        let amp = amplitudes[amplitudes.len() - 3..].iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let tail = geo.extrapolated(kernel, amp, last)?;
        if tail < tol {
            return Ok(SeriesEstimate { value: sum, tail_estimate: tail, terms: done + 1, certified: false });
        }
    }
    Err(non_convergence(OP, format!("tail above tolerance after all poles below radius {}", cfg.pole_radius)))
}

/// The residue series restricted to poles with `|p| < radius`, with the estimated
/// modulus of the omitted poles.
pub fn transform_rhs_truncated(req: &TransformRequest<'_>, radius: f64) -> Result<SeriesEstimate> {
    const OP: &str = "transform_rhs_truncated";
    check_series(OP, req)?;
    let kernel = req.kernel;
    let mut sum = zero_term(req)?;
    let poles = kernel.poles_in(radius)?;
    let geo = SeriesTail::new(req.nu, req.z, req.omega);
    let mut amplitudes: Vec<f64> = Vec::new();
    for (done, p) in poles.iter().enumerate() {
        let window = &poles[done.saturating_sub(1)..(done + 2).min(poles.len())];
        let (t, h) = summand(req, p, window)?;
        sum += t;
        amplitudes.push(geo.amplitude(h, p.at));
    }
    if kernel.finite_poles() && kernel.poles_in(f64::INFINITY)?.len() == poles.len() {
        return Ok(SeriesEstimate { value: sum, tail_estimate: 0.0, terms: poles.len(), certified: true });
    }
    let last = poles.last().map_or(0.0, |p| p.at.norm());
    if let Some(bound) = geo.certified(kernel, req.nu, last)? {
        return Ok(SeriesEstimate { value: sum, tail_estimate: bound, terms: poles.len(), certified: true });
    }
    if amplitudes.len() < 3 {
        return Err(precondition(OP, format!("radius {radius} covers fewer than three poles; no tail estimate")));
    }
    let amp = amplitudes[amplitudes.len() - 3..].iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let tail = geo.extrapolated(kernel, amp, last)?;
    Ok(SeriesEstimate { value: sum, tail_estimate: tail, terms: poles.len(), certified: false })
}

/// Evaluates both sides of the identity for `1 < ω < z`.
pub fn verify_transform(req: &TransformRequest<'_>, cfg: &TransformConfig) -> Result<TransformReport> {
    let rhs = transform_rhs(req, cfg)?;
    let lhs = transform_lhs(req, cfg)?;
    Ok(TransformReport {
        lhs: lhs.value,
        lhs_err: lhs.err_est,
        rhs: rhs.value,
        tail: rhs.tail_estimate,
        terms: rhs.terms,
        certified: rhs.certified,
        residual: (lhs.value - rhs.value).norm() / rhs.value.norm().max(1.0),
    })
}

/// `Q_ν(ωz − √(ω²−1)√(z²−1) cos θ)`, the closed form of the cosine kernel transform.
pub fn addition_formula_rhs(nu: C, theta: f64, z: f64, omega: f64) -> Result<C> {
    const OP: &str = "addition_formula_rhs";
    check_point(OP, z, omega)?;
    let arg = omega * z - ((omega - 1.0) * (omega + 1.0)).sqrt() * ((z - 1.0) * (z + 1.0)).sqrt() * theta.cos();
    if !(arg > 1.0) {
        return Err(domain(OP, format!("coincident points (argument {arg})")));
    }
    Ok(q_scaled(nu, ZERO, c(arg))?.value())
}
