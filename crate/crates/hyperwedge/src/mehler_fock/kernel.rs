//! Odd meromorphic kernels `g` of the generalized Mehler–Fock transform.
//!
//! Besides `g` itself each kernel exposes the scaled weight
//! `W(ρ) = e^{−πρ} sin(πiρ)/π · g(iρ)` that multiplies `e^{πρ} Q_ν^{−iρ}(z) Q_ν^{iρ}(ω)`
//! in the transform integrand, its right-half-plane poles with residues, and how
//! `W` decays.

use crate::error::{Error, Result};
use crate::scalar::{c, ln_sin_pi, C, I, ONE, ZERO};
use std::f64::consts::PI;
use std::fmt::Debug;

/// Behaviour of `g(iρ)` as `ρ → ∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecayClass {
    /// `g(iρ) = O(1/ρ)`.
    TypeI,
    /// `g(iρ) → C`.
    TypeII(C),
}

/// Decay of the weight `W(ρ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Envelope {
    /// `|W(ρ)| ≤ scale·e^{−rate·ρ}` for all `ρ ≥ 0`.
    Exponential { rate: f64, scale: f64 },
    /// `W(ρ) = O(ρ^{−power})`, `power ≥ 0`.
    Algebraic { power: f64 },
}

/// A pole `p` with `Re p > 0` together with its order and `Res(g; p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelPole {
    pub at: C,
    pub order: u32,
    pub residue: C,
}

/// An odd meromorphic function, regular on the imaginary axis except for at most a
/// simple pole at the origin.
pub trait MeromorphicKernel: Debug + Send + Sync {
    /// Short identifier.
    fn name(&self) -> String;

    /// `g(s)`.
    fn eval(&self, s: C) -> C;

    /// Poles with `Re p > 0` and `|p| < radius`, sorted by modulus.
    fn poles_in(&self, radius: f64) -> Result<Vec<KernelPole>>;

    /// `Res(g; 0)`, zero when `g` is regular at the origin.
    fn residue_at_zero(&self) -> C;

    fn decay_class(&self) -> DecayClass;

    fn envelope(&self) -> Envelope;

    /// `N_k`: radii of circles on which `g` stays bounded.
    fn bounded_radius(&self, k: usize) -> f64;

    /// Whether the pole set is finite.
    fn finite_poles(&self) -> bool;

    /// Bound on `|Res(g; p)|` over an infinite pole set.
    fn residue_bound(&self) -> f64 {
        0.0
    }

    /// `e^{−πρ} sin(πiρ)/π · g(iρ)`; equals `Res(g; 0)` at `ρ = 0`.
    fn weight(&self, rho: f64) -> C {
        if rho == 0.0 {
            return self.residue_at_zero();
        }
        I * (-(-2.0 * PI * rho).exp_m1()) / (2.0 * PI) * self.eval(C::new(0.0, rho))
    }
}

/// Above this `|Im s|` trigonometric quotients are evaluated through logarithms.
const LOG_EVAL_IMAG: f64 = 20.0;

fn ln_sin(z: C) -> C {
    ln_sin_pi(z / PI)
}

fn ln_cos(z: C) -> C {
    ln_sin_pi(z / PI + 0.5)
}

fn sort_by_modulus(poles: &mut [KernelPole]) {
    poles.sort_by(|a, b| a.at.norm().total_cmp(&b.at.norm()));
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidKernel(msg.into())
}

/// `g(s) = 1/s`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Reciprocal;

impl MeromorphicKernel for Reciprocal {
    fn name(&self) -> String {
        "reciprocal".into()
    }
    fn eval(&self, s: C) -> C {
        ONE / s
    }
    fn poles_in(&self, _radius: f64) -> Result<Vec<KernelPole>> {
        Ok(Vec::new())
    }
    fn residue_at_zero(&self) -> C {
        ONE
    }
    fn decay_class(&self) -> DecayClass {
        DecayClass::TypeI
    }
    fn envelope(&self) -> Envelope {
        Envelope::Algebraic { power: 1.0 }
    }
    fn bounded_radius(&self, k: usize) -> f64 {
        k as f64
    }
    fn finite_poles(&self) -> bool {
        true
    }
    fn weight(&self, rho: f64) -> C {
        if rho == 0.0 {
            return ONE;
        }
        c(-(-2.0 * PI * rho).exp_m1() / (2.0 * PI * rho))
    }
}

/// Which rational family a [`Rational`] kernel belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RationalFamily {
    /// `g₁(s) = (1/s) p(s|a)/p(s|b)`, `m ≥ n`.
    OverS,
    /// `g₂(s) = s p(s|a)/p(s|b)`, `m > n`.
    TimesS,
}

/// Rational kernels built from `p(s|a₁…aₙ) = Π (s² − aᵢ²)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rational {
    family: RationalFamily,
    a: Vec<C>,
    b: Vec<C>,
}

fn check_distinct_right(name: &str, v: &[C]) -> Result<()> {
    for (i, x) in v.iter().enumerate() {
        if !(x.re > 0.0) || !x.re.is_finite() || !x.im.is_finite() {
            return Err(invalid(format!("{name}[{i}] = {x} must lie in the open right half-plane")));
        }
        if v[..i].iter().any(|y| (x - y).norm() <= 1e-12 * x.norm()) {
            return Err(invalid(format!("{name} entries must be pairwise different ({x} repeats)")));
        }
    }
    Ok(())
}

fn poly(s2: C, roots: &[C]) -> C {
    roots.iter().fold(ONE, |acc, r| acc * (s2 - r * r))
}

impl Rational {
    pub fn new(family: RationalFamily, a: Vec<C>, b: Vec<C>) -> Result<Self> {
        check_distinct_right("a", &a)?;
        check_distinct_right("b", &b)?;
        let ok = match family {
            RationalFamily::OverS => b.len() >= a.len(),
            RationalFamily::TimesS => b.len() > a.len(),
        };
        if !ok {
            return Err(invalid(format!("degree condition fails for n = {}, m = {}", a.len(), b.len())));
        }
        Ok(Rational { family, a, b })
    }

    /// `g(s) = s/(s² − 1)`.
    pub fn s_over_s2_minus_1() -> Self {
        Rational { family: RationalFamily::TimesS, a: Vec::new(), b: vec![ONE] }
    }

    fn ratio(&self, s2: C) -> C {
        poly(s2, &self.a) / poly(s2, &self.b)
    }

    /// `p(b_k|a)/Π_{i≠k}(b_k² − b_i²)`.
    fn partial(&self, k: usize) -> C {
        let bk2 = self.b[k] * self.b[k];
        let mut den = ONE;
        for (i, bi) in self.b.iter().enumerate() {
            if i != k {
                den *= bk2 - bi * bi;
            }
        }
        poly(bk2, &self.a) / den
    }
}

impl MeromorphicKernel for Rational {
    fn name(&self) -> String {
        let f = match self.family {
            RationalFamily::OverS => "g1",
            RationalFamily::TimesS => "g2",
        };
        format!("rational-{f}(n={}, m={})", self.a.len(), self.b.len())
    }
    fn eval(&self, s: C) -> C {
        let r = self.ratio(s * s);
        match self.family {
            RationalFamily::OverS => r / s,
            RationalFamily::TimesS => r * s,
        }
    }
    fn poles_in(&self, radius: f64) -> Result<Vec<KernelPole>> {
        let mut out: Vec<KernelPole> = (0..self.b.len())
            .filter(|&k| self.b[k].norm() < radius)
            .map(|k| {
                let bk = self.b[k];
                let residue = match self.family {
                    RationalFamily::OverS => self.partial(k) / (2.0 * bk * bk),
                    RationalFamily::TimesS => self.partial(k) * 0.5,
                };
                KernelPole { at: bk, order: 1, residue }
            })
            .collect();
        sort_by_modulus(&mut out);
        Ok(out)
    }
    fn residue_at_zero(&self) -> C {
        match self.family {
            RationalFamily::OverS => self.ratio(ZERO),
            RationalFamily::TimesS => ZERO,
        }
    }
    fn decay_class(&self) -> DecayClass {
        DecayClass::TypeI
    }
    fn envelope(&self) -> Envelope {
        let deg = 2.0 * (self.b.len() as f64 - self.a.len() as f64);
        let power = match self.family {
            RationalFamily::OverS => deg + 1.0,
            RationalFamily::TimesS => deg - 1.0,
        };
        Envelope::Algebraic { power }
    }
    fn bounded_radius(&self, k: usize) -> f64 {
        let rmax = self.b.iter().map(|b| b.norm()).fold(0.0, f64::max);
        rmax + 1.0 + k as f64
    }
    fn finite_poles(&self) -> bool {
        true
    }
    fn weight(&self, rho: f64) -> C {
        if rho == 0.0 {
            return self.residue_at_zero();
        }
        let s = C::new(0.0, rho);
        let r = self.ratio(s * s);
        // W = (1 − e^{−2πρ})/(2π) · i g(iρ); i g(iρ) = r/ρ or −ρ r
        let f = -(-2.0 * PI * rho).exp_m1() / (2.0 * PI);
        match self.family {
            RationalFamily::OverS => r * (f / rho),
            RationalFamily::TimesS => -r * (f * rho),
        }
    }
}

/// `g(s) = s^{2m+1}/((s − c)(s + c))^{2n}`, `2m + 1 < 4n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoublePole {
    c: C,
    n: u32,
    m: u32,
}

impl DoublePole {
    pub fn new(c: C, n: u32, m: u32) -> Result<Self> {
        if !(c.re > 0.0) {
            return Err(invalid(format!("c = {c} must lie in the open right half-plane")));
        }
        if n == 0 || 2 * m + 1 >= 4 * n {
            return Err(invalid(format!("need n ≥ 1 and 2m+1 < 4n, got n = {n}, m = {m}")));
        }
        Ok(DoublePole { c, n, m })
    }

    /// `Res(g; c)` by the Leibniz rule applied to `s^{2m+1}(s+c)^{−2n}`.
    pub fn residue_at_c(&self) -> C {
        let k = (2 * self.n - 1) as usize;
        let a = (2 * self.m + 1) as usize;
        let b = (2 * self.n) as f64;
        let cc = self.c;
        let mut sum = ZERO;
        let mut binom = 1.0;
        for j in 0..=k {
            if j > 0 {
                binom *= (k + 1 - j) as f64 / j as f64;
            }
            if j > a {
                break;
            }
            // d^j s^a = a!/(a−j)! s^{a−j}
            let fall_a: f64 = (0..j).map(|i| (a - i) as f64).product();
            let i = k - j;
            // d^i (s+c)^{−b} = (−1)^i (b)_i (s+c)^{−b−i}
            let poch_b: f64 = (0..i).map(|t| b + t as f64).product();
            let sign = if i.is_multiple_of(2) { 1.0 } else { -1.0 };
            let term = cc.powi((a - j) as i32) * (2.0 * cc).powf(-b - i as f64);
            sum += term * (binom * fall_a * poch_b * sign);
        }
        let fact: f64 = (1..=k).map(|t| t as f64).product();
        sum / fact
    }
}

impl MeromorphicKernel for DoublePole {
    fn name(&self) -> String {
        format!("double-pole(c={}, n={}, m={})", self.c, self.n, self.m)
    }
    fn eval(&self, s: C) -> C {
        s.powi((2 * self.m + 1) as i32) / ((s - self.c) * (s + self.c)).powi((2 * self.n) as i32)
    }
    fn poles_in(&self, radius: f64) -> Result<Vec<KernelPole>> {
        if self.c.norm() >= radius {
            return Ok(Vec::new());
        }
        Ok(vec![KernelPole { at: self.c, order: 2 * self.n, residue: self.residue_at_c() }])
    }
    fn residue_at_zero(&self) -> C {
        ZERO
    }
    fn decay_class(&self) -> DecayClass {
        DecayClass::TypeI
    }
    fn envelope(&self) -> Envelope {
        Envelope::Algebraic { power: (4 * self.n - 2 * self.m - 1) as f64 }
    }
    fn bounded_radius(&self, k: usize) -> f64 {
        self.c.norm() + 1.0 + k as f64
    }
    fn finite_poles(&self) -> bool {
        true
    }
}

/// `g(s) = π cos(s(π − θ))/sin(πs)`, `θ ∈ [0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cosine {
    theta: f64,
}

impl Cosine {
    pub fn new(theta: f64) -> Result<Self> {
        if !(0.0..2.0 * PI).contains(&theta) {
            return Err(invalid(format!("θ = {theta} must lie in [0, 2π)")));
        }
        Ok(Cosine { theta })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

impl MeromorphicKernel for Cosine {
    fn name(&self) -> String {
        format!("cosine(θ={})", self.theta)
    }
    fn eval(&self, s: C) -> C {
        if s.im.abs() > LOG_EVAL_IMAG {
            return PI * (ln_cos(s * (PI - self.theta)) - ln_sin(PI * s)).exp();
        }
        PI * (s * (PI - self.theta)).cos() / (PI * s).sin()
    }
    fn poles_in(&self, radius: f64) -> Result<Vec<KernelPole>> {
        let kmax = radius.ceil() as usize;
        Ok((1..kmax)
            .filter(|&k| (k as f64) < radius)
            .map(|k| {
                let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
                KernelPole { at: c(k as f64), order: 1, residue: c(sign * (k as f64 * (PI - self.theta)).cos()) }
            })
            .collect())
    }
    fn residue_at_zero(&self) -> C {
        ONE
    }
    fn decay_class(&self) -> DecayClass {
        if self.theta == 0.0 {
            DecayClass::TypeII(C::new(0.0, -PI))
        } else {
            DecayClass::TypeI
        }
    }
    fn envelope(&self) -> Envelope {
        if self.theta == 0.0 {
            Envelope::Algebraic { power: 0.0 }
        } else {
            Envelope::Exponential { rate: self.theta.min(2.0 * PI - self.theta), scale: 1.0 }
        }
    }
    fn bounded_radius(&self, k: usize) -> f64 {
        k as f64 + 0.5
    }
    fn finite_poles(&self) -> bool {
        false
    }
    fn residue_bound(&self) -> f64 {
        1.0
    }
    fn weight(&self, rho: f64) -> C {
        c(0.5 * ((-self.theta * rho).exp() + (-(2.0 * PI - self.theta) * rho).exp()))
    }
}

/// `(1 − e^{−2xρ})/(1 − e^{−2yρ})` for `x, y > 0`, with its `ρ → 0` limit.
fn expm1_ratio(x: f64, y: f64, rho: f64) -> f64 {
    if rho == 0.0 {
        return x / y;
    }
    (-2.0 * x * rho).exp_m1() / (-2.0 * y * rho).exp_m1()
}

/// `g(s) = cos(cs)/(2 sin(γs))`, `|c| ≤ γ`: first part of the wedge correction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WedgeFirst {
    gamma: f64,
    c: f64,
}

impl WedgeFirst {
    pub fn new(gamma: f64, c: f64) -> Result<Self> {
        if !(gamma > 0.0 && gamma <= 2.0 * PI) {
            return Err(invalid(format!("wedge angle γ = {gamma} must lie in (0, 2π]")));
        }
        if !(c.abs() <= gamma) {
            return Err(invalid(format!("|c| = {} must not exceed γ = {gamma}", c.abs())));
        }
        Ok(WedgeFirst { gamma, c })
    }
}

impl MeromorphicKernel for WedgeFirst {
    fn name(&self) -> String {
        format!("wedge-first(γ={}, c={})", self.gamma, self.c)
    }
    fn eval(&self, s: C) -> C {
        if s.im.abs() > LOG_EVAL_IMAG {
            return 0.5 * (ln_cos(s * self.c) - ln_sin(s * self.gamma)).exp();
        }
        (s * self.c).cos() / (2.0 * (s * self.gamma).sin())
    }
    fn poles_in(&self, radius: f64) -> Result<Vec<KernelPole>> {
        let step = PI / self.gamma;
        let mut out = Vec::new();
        let mut k = 1usize;
        while (k as f64) * step < radius {
            let p = k as f64 * step;
            let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
            out.push(KernelPole { at: c(p), order: 1, residue: c(sign * (self.c * p).cos() / (2.0 * self.gamma)) });
            k += 1;
        }
        Ok(out)
    }
    fn residue_at_zero(&self) -> C {
        c(0.5 / self.gamma)
    }
    fn decay_class(&self) -> DecayClass {
        if self.c.abs() == self.gamma {
            DecayClass::TypeII(C::new(0.0, -0.5))
        } else {
            DecayClass::TypeI
        }
    }
    fn envelope(&self) -> Envelope {
        let rate = self.gamma - self.c.abs();
        if rate > 0.0 {
            Envelope::Exponential { rate, scale: (PI / self.gamma).max(1.0) / (2.0 * PI) }
        } else {
            Envelope::Algebraic { power: 0.0 }
        }
    }
    fn bounded_radius(&self, k: usize) -> f64 {
        (k as f64 + 0.5) * PI / self.gamma
    }
    fn finite_poles(&self) -> bool {
        false
    }
    fn residue_bound(&self) -> f64 {
        0.5 / self.gamma
    }
    fn weight(&self, rho: f64) -> C {
        // (1 − e^{−2πρ})(e^{(c−γ)ρ} + e^{−(c+γ)ρ}) / (4π(1 − e^{−2γρ}))
        let r = expm1_ratio(PI, self.gamma, rho);
        let e = ((self.c - self.gamma) * rho).exp() + (-(self.c + self.gamma) * rho).exp();
        c(r * e / (4.0 * PI))
    }
}

/// `g(s) = sin((π − γ)s) cos(ds)/(2 sin(πs) sin(γs))`, `|d| < γ`: second part of the
/// wedge correction. Poles at the positive integers and at `kπ/γ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WedgeSecond {
    gamma: f64,
    d: f64,
}

impl WedgeSecond {
    pub fn new(gamma: f64, d: f64) -> Result<Self> {
        if !(gamma > 0.0 && gamma <= 2.0 * PI) {
            return Err(invalid(format!("wedge angle γ = {gamma} must lie in (0, 2π]")));
        }
        if !(d.abs() <= gamma) {
            return Err(invalid(format!("|d| = {} must not exceed γ = {gamma}", d.abs())));
        }
        Ok(WedgeSecond { gamma, d })
    }

    fn vanishes(&self) -> bool {
        self.gamma == PI
    }
}

impl MeromorphicKernel for WedgeSecond {
    fn name(&self) -> String {
        format!("wedge-second(γ={}, d={})", self.gamma, self.d)
    }
    fn eval(&self, s: C) -> C {
        if self.vanishes() {
            return ZERO;
        }
        if s.im.abs() > LOG_EVAL_IMAG {
            let l = ln_sin(s * (PI - self.gamma)) + ln_cos(s * self.d) - ln_sin(PI * s) - ln_sin(s * self.gamma);
            return 0.5 * l.exp();
        }
        (s * (PI - self.gamma)).sin() * (s * self.d).cos() / (2.0 * (PI * s).sin() * (s * self.gamma).sin())
    }
    fn poles_in(&self, radius: f64) -> Result<Vec<KernelPole>> {
        if self.vanishes() {
            return Ok(Vec::new());
        }
        let step = PI / self.gamma;
        let mut out = Vec::new();
        let mut k = 1usize;
        while (k as f64) < radius {
            let p = k as f64;
            // nearest member of the second family
            let j = (p / step).round();
            if j >= 1.0 && (j * step - p).abs() <= 1e-12 * p {
                return Err(Error::PoleCollision { op: "wedge-second kernel", at: p });
            }
            out.push(KernelPole { at: c(p), order: 1, residue: c(-(self.d * p).cos() / (2.0 * PI)) });
            k += 1;
        }
        let mut k = 1usize;
        while (k as f64) * step < radius {
            let p = k as f64 * step;
            out.push(KernelPole { at: c(p), order: 1, residue: c((self.d * p).cos() / (2.0 * self.gamma)) });
            k += 1;
        }
        sort_by_modulus(&mut out);
        Ok(out)
    }
    fn residue_at_zero(&self) -> C {
        c(0.5 * (1.0 / self.gamma - 1.0 / PI))
    }
    fn decay_class(&self) -> DecayClass {
        DecayClass::TypeI
    }
    fn envelope(&self) -> Envelope {
        let rate = 2.0 * PI.min(self.gamma) - self.d.abs();
        let scale = ((PI - self.gamma).abs() / self.gamma).max(1.0) / (2.0 * PI);
        if rate > 0.0 {
            Envelope::Exponential { rate, scale }
        } else {
            Envelope::Algebraic { power: 0.0 }
        }
    }
    fn bounded_radius(&self, k: usize) -> f64 {
        (k as f64 + 0.5) * PI / self.gamma.max(PI)
    }
    fn finite_poles(&self) -> bool {
        self.vanishes()
    }
    fn residue_bound(&self) -> f64 {
        (0.5 / PI).max(0.5 / self.gamma)
    }
    fn weight(&self, rho: f64) -> C {
        if self.vanishes() {
            return ZERO;
        }
        // e^{−πρ} sinh((π−γ)ρ) cosh(dρ)/(2π sinh(γρ))
        let x = PI - self.gamma;
        let ax = x.abs();
        let ad = self.d.abs();
        let r = expm1_ratio(ax, self.gamma, rho);
        let e = ((ax - self.gamma + ad - PI) * rho).exp() * 0.5 * (1.0 + (-2.0 * ad * rho).exp());
        c(x.signum() * r * e / (2.0 * PI))
    }
}

/// A finite linear combination `Σ cᵢ gᵢ` of kernels.
#[derive(Debug)]
pub struct KernelSum {
    terms: Vec<(C, Box<dyn MeromorphicKernel>)>,
}

impl KernelSum {
    pub fn new(terms: Vec<(C, Box<dyn MeromorphicKernel>)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(invalid("empty kernel sum"));
        }
        Ok(KernelSum { terms })
    }
}

impl MeromorphicKernel for KernelSum {
    fn name(&self) -> String {
        let parts: Vec<String> = self.terms.iter().map(|(w, k)| format!("{w}·{}", k.name())).collect();
        parts.join(" + ")
    }
    fn eval(&self, s: C) -> C {
        self.terms.iter().map(|(w, k)| w * k.eval(s)).sum()
    }
    fn poles_in(&self, radius: f64) -> Result<Vec<KernelPole>> {
        let mut all: Vec<KernelPole> = Vec::new();
        for (w, k) in &self.terms {
            for p in k.poles_in(radius)? {
                let scaled = KernelPole { residue: p.residue * w, ..p };
                match all.iter_mut().find(|q| (q.at - p.at).norm() <= 1e-12 * p.at.norm()) {
                    Some(q) if q.order == 1 && p.order == 1 => q.residue += scaled.residue,
                    Some(_) => return Err(Error::PoleCollision { op: "kernel sum", at: p.at.re }),
                    None => all.push(scaled),
                }
            }
        }
        sort_by_modulus(&mut all);
        Ok(all)
    }
    fn residue_at_zero(&self) -> C {
        self.terms.iter().map(|(w, k)| w * k.residue_at_zero()).sum()
    }
    fn decay_class(&self) -> DecayClass {
        let mut limit = ZERO;
        let mut type2 = false;
        for (w, k) in &self.terms {
            if let DecayClass::TypeII(cst) = k.decay_class() {
                limit += w * cst;
                type2 = true;
            }
        }
        if type2 && limit != ZERO {
            DecayClass::TypeII(limit)
        } else {
            DecayClass::TypeI
        }
    }
    fn envelope(&self) -> Envelope {
        let mut rate = f64::INFINITY;
        let mut scale = 0.0;
        let mut power = f64::INFINITY;
        let mut algebraic = false;
        for (w, k) in &self.terms {
            match k.envelope() {
                Envelope::Exponential { rate: r, scale: s } => {
                    rate = rate.min(r);
                    scale += w.norm() * s;
                }
                Envelope::Algebraic { power: p } => {
                    algebraic = true;
                    power = power.min(p);
                }
            }
        }
        if algebraic {
            Envelope::Algebraic { power }
        } else {
            Envelope::Exponential { rate, scale }
        }
    }
    fn bounded_radius(&self, k: usize) -> f64 {
        self.terms.iter().map(|(_, t)| t.bounded_radius(k)).fold(0.0, f64::max)
    }
    fn finite_poles(&self) -> bool {
        self.terms.iter().all(|(_, k)| k.finite_poles())
    }
    fn residue_bound(&self) -> f64 {
        self.terms.iter().map(|(w, k)| w.norm() * k.residue_bound()).sum()
    }
    fn weight(&self, rho: f64) -> C {
        self.terms.iter().map(|(w, k)| w * k.weight(rho)).sum()
    }
}

/// Checks the declared decay class against `g(iρ)` at `ρ₀` and `2ρ₀`.
///
/// `ρ₀ = 50`, raised to `10/rate` for slowly decaying exponential envelopes.
pub fn check_decay_class(kernel: &dyn MeromorphicKernel) -> Result<()> {
    let r0 = match kernel.envelope() {
        Envelope::Exponential { rate, .. } if rate > 0.0 => (10.0 / rate).clamp(50.0, 1e12),
        _ => 50.0,
    };
    let g1 = kernel.eval(C::new(0.0, r0));
    let g2 = kernel.eval(C::new(0.0, 2.0 * r0));
    let ok = match kernel.decay_class() {
        DecayClass::TypeI => 2.0 * r0 * g2.norm() <= 1.5 * r0 * g1.norm() + 1e-12,
        DecayClass::TypeII(cst) => (g1 / cst - 1.0).norm() <= 0.2 && (g2 / cst - 1.0).norm() <= 0.1,
    };
    if ok {
        Ok(())
    } else {
        Err(invalid(format!("{}: declared decay class {:?} does not match g(iρ)", kernel.name(), kernel.decay_class())))
    }
}

/// Named kernels used throughout the tests and the command line.
pub fn kernel_catalog() -> Vec<(String, Box<dyn MeromorphicKernel>)> {
    let h = |x: f64| c(x);
    let mut out: Vec<(String, Box<dyn MeromorphicKernel>)> = vec![
        ("reciprocal".into(), Box::new(Reciprocal)),
        ("s-over-s2-minus-1".into(), Box::new(Rational::s_over_s2_minus_1())),
        (
            "rational-g1".into(),
            Box::new(Rational::new(RationalFamily::OverS, vec![h(0.5)], vec![h(1.0), h(1.5)]).expect("valid")),
        ),
        (
            "rational-g2".into(),
            Box::new(Rational::new(RationalFamily::TimesS, vec![h(0.5)], vec![h(1.0), h(1.5)]).expect("valid")),
        ),
        ("double-pole-vanishing".into(), Box::new(DoublePole::new(h(1.0), 1, 0).expect("valid"))),
        ("double-pole-unit".into(), Box::new(DoublePole::new(h(1.0), 1, 1).expect("valid"))),
    ];
    for (label, theta) in [("pi/4", PI / 4.0), ("pi/2", PI / 2.0), ("pi", PI), ("3pi/2", 1.5 * PI)] {
        out.push((format!("cosine-{label}"), Box::new(Cosine::new(theta).expect("valid"))));
    }
    out
}
