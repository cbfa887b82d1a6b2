//! Complex scalar conventions and the gamma family.
//!
//! Logarithms and powers use the principal branch with `arg z ∈ (−π, π]`.
//! The gamma function uses a Lanczos approximation (g = 7, nine terms) with the
//! reflection formula for `Re z < 1/2`.

use crate::error::{domain, Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Double-precision real.
pub type Real = f64;

/// Double-precision complex value.
pub type ComplexScalar = Complex64;

pub(crate) type C = Complex64;

pub(crate) const I: C = C::new(0.0, 1.0);
pub(crate) const ONE: C = C::new(1.0, 0.0);
pub(crate) const ZERO: C = C::new(0.0, 0.0);

pub(crate) fn c(re: f64) -> C {
    C::new(re, 0.0)
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const LN_PI: f64 = 1.144_729_885_849_400_2;

/// Principal logarithm; errors on the cut `(−∞, 0]`.
pub fn principal_log(z: ComplexScalar) -> Result<ComplexScalar> {
    if z == ZERO {
        return Err(Error::Cut { op: "principal_log", at: z });
    }
    if z.im == 0.0 && z.re < 0.0 {
        return Err(Error::Cut { op: "principal_log", at: z });
    }
    Ok(z.ln())
}

/// Principal power `z^μ = exp(μ log z)`; `z^0 = 1`.
pub fn principal_pow(z: ComplexScalar, mu: ComplexScalar) -> Result<ComplexScalar> {
    if mu == ZERO {
        return Ok(ONE);
    }
    let l = principal_log(z).map_err(|_| Error::Cut { op: "principal_pow", at: z })?;
    Ok((mu * l).exp())
}

/// True when `z` is 0, −1, −2, … exactly.
pub(crate) fn is_nonpositive_integer(z: C) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// `sin(πz)` with exact reduction of the real part, accurate near integers.
pub(crate) fn sin_pi(z: C) -> C {
    let n = z.re.round();
    let r = z.re - n;
    let s = C::new(PI * r, PI * z.im).sin();
    if (n as i64).rem_euclid(2) == 1 {
        -s
    } else {
        s
    }
}

/// A logarithm of `sin(πz)`, finite for large `|Im z|`.
pub(crate) fn ln_sin_pi(z: C) -> C {
    if z.im.abs() <= 1.0 {
        return sin_pi(z).ln();
    }
    if z.im < 0.0 {
        return ln_sin_pi(z.conj()).conj();
    }
    let n = z.re.round();
    let r = z.re - n;
    // sin(πw) = e^{−iπw} (1 − e^{2iπw}) / (−2i) with w = r + iy
    let w = C::new(r, z.im);
    let e2 = (2.0 * PI * I * w).exp();
    let tail = ((ONE - e2) / C::new(0.0, -2.0)).ln();
    -PI * I * w + tail + C::new(0.0, PI * n)
}

fn ln_gamma_lanczos(z: C) -> C {
    let w = z - 1.0;
    let mut x = c(LANCZOS[0]);
    for (i, &ci) in LANCZOS.iter().enumerate().skip(1) {
        x += ci / (w + i as f64);
    }
    let t = w + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (w + 0.5) * t.ln() - t + x.ln()
}

/// A logarithm of `Γ(z)`: `exp(ln_gamma(z)) = Γ(z)`, branch not necessarily principal.
///
/// Returns an infinite real part at the poles.
pub fn ln_gamma(z: ComplexScalar) -> ComplexScalar {
    if is_nonpositive_integer(z) {
        return c(f64::INFINITY);
    }
    if z.re < 0.5 {
        c(LN_PI) - ln_sin_pi(z) - ln_gamma_lanczos(ONE - z)
    } else {
        ln_gamma_lanczos(z)
    }
}

/// Complex gamma function; errors at the poles 0, −1, −2, … and on overflow.
pub fn gamma(z: ComplexScalar) -> Result<ComplexScalar> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole { op: "gamma", at: z });
    }
    let v = if z.re < 0.5 && z.norm() <= 20.0 {
        PI / (sin_pi(z) * ln_gamma_lanczos(ONE - z).exp())
    } else {
        ln_gamma(z).exp()
    };
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(domain("gamma", format!("overflow at {z}")))
    }
}

/// Reciprocal gamma `1/Γ(z)`, entire; zero at the non-positive integers.
pub fn rgamma(z: ComplexScalar) -> ComplexScalar {
    if is_nonpositive_integer(z) {
        return ZERO;
    }
    if z.re >= 0.5 {
        return (-ln_gamma_lanczos(z)).exp();
    }
    if z.norm() <= 20.0 {
        sin_pi(z) * ln_gamma_lanczos(ONE - z).exp() / PI
    } else {
        (ln_sin_pi(z) + ln_gamma_lanczos(ONE - z) - LN_PI).exp()
    }
}

/// Pochhammer symbol `(z)_k = z (z+1) ⋯ (z+k−1)`, `(z)_0 = 1`.
pub fn pochhammer(z: ComplexScalar, k: u32) -> ComplexScalar {
    (0..k).fold(ONE, |acc, j| acc * (z + j as f64))
}

/// Leading term `z^{α−β}` of `Γ(z+α)/Γ(z+β)` for large `|z|` with `|arg z| ≤ π − ε`.
pub fn gamma_ratio_asymptotic(
    z: ComplexScalar,
    alpha: ComplexScalar,
    beta: ComplexScalar,
) -> Result<ComplexScalar> {
    const EPS: f64 = 1e-3;
    if z == ZERO || z.arg().abs() > PI - EPS {
        return Err(domain("gamma_ratio_asymptotic", format!("z = {z} is too close to the negative real axis")));
    }
    principal_pow(z, alpha - beta)
}

/// `Γ(a)/Γ(b)` through logarithms; zero when `b` is a pole.
#[cfg(test)]
pub(crate) fn gamma_ratio(a: C, b: C) -> C {
    if is_nonpositive_integer(b) {
        return ZERO;
    }
    (ln_gamma(a) - ln_gamma(b)).exp()
}

/// A complex number `mant · exp(log)`, used to carry values outside the `f64` range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Scaled {
    pub mant: C,
    pub log: C,
}

impl Scaled {
    pub fn new(mant: C) -> Self {
        Scaled { mant, log: ZERO }
    }

    pub fn from_log(log: C) -> Self {
        Scaled { mant: ONE, log }
    }

    pub fn value(self) -> C {
        if self.mant == ZERO {
            return ZERO;
        }
        self.mant * self.log.exp()
    }

    pub fn mul(self, o: Scaled) -> Scaled {
        Scaled { mant: self.mant * o.mant, log: self.log + o.log }
    }

    pub fn scale(self, f: C) -> Scaled {
        Scaled { mant: self.mant * f, log: self.log }
    }

    pub fn add(self, o: Scaled) -> Scaled {
        if self.mant == ZERO {
            return o;
        }
        if o.mant == ZERO {
            return self;
        }
        let l = self.log.re.max(o.log.re);
        let mant = self.mant * (self.log - l).exp() + o.mant * (o.log - l).exp();
        Scaled { mant, log: c(l) }
    }

    /// Mantissa relative to the reference logarithm `log`.
    pub fn value_relative(self, log: C) -> C {
        if self.mant == ZERO {
            return ZERO;
        }
        self.mant * (self.log - log).exp()
    }

    /// Natural logarithm of the magnitude.
    pub fn ln_abs(self) -> f64 {
        self.mant.norm().ln() + self.log.re
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: C, b: C) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn log_and_pow_examples() {
        assert_eq!(principal_log(ONE).unwrap(), ZERO);
        assert!((principal_log(c(std::f64::consts::E)).unwrap() - ONE).norm() < 1e-15);
        assert!((principal_log(I).unwrap() - C::new(0.0, PI / 2.0)).norm() < 1e-15);
        assert!(principal_log(c(-1.0)).is_err());
        assert!(principal_log(ZERO).is_err());
        assert!((principal_pow(c(4.0), c(0.5)).unwrap() - 2.0).norm() < 1e-15);
        assert_eq!(principal_pow(C::new(3.0, 1.0), ZERO).unwrap(), ONE);
        assert!((principal_pow(I, c(2.0)).unwrap() + 1.0).norm() < 1e-15);
        assert!(principal_pow(c(-2.0), c(0.5)).is_err());
    }

    #[test]
    fn gamma_examples() {
        assert!(rel(gamma(ONE).unwrap(), ONE) < 1e-15);
        assert!(rel(gamma(c(5.0)).unwrap(), c(24.0)) < 1e-14);
        assert!(rel(gamma(c(0.5)).unwrap(), c(PI.sqrt())) < 1e-14);
        assert!(matches!(gamma(c(-2.0)), Err(Error::Pole { .. })));
        assert!(matches!(gamma(ZERO), Err(Error::Pole { .. })));
    }

    #[test]
    fn gamma_against_reference_values() {
        // Reference values from a 30-digit evaluation.
        let cases = [
            (C::new(0.5, 1.0), C::new(0.300_694_617_260_655_8, -0.424_967_879_433_123_8)),
            (C::new(-2.5, 0.3), C::new(-0.613_822_997_437_741_5, -0.211_232_614_937_041_78)),
            (C::new(10.0, -7.0), C::new(-27_545.581_577_938_886, 19_000.311_150_422_674)),
            (C::new(1.0, 20.0), C::new(-2.519_246_671_099_269_8e-13, 3.674_297_047_452_976e-14)),
        ];
        for (z, want) in cases {
            assert!(rel(gamma(z).unwrap(), want) < 1e-12, "{z}: {} vs {want}", gamma(z).unwrap());
        }
    }

    #[test]
    fn rgamma_is_entire_and_zero_at_poles() {
        assert_eq!(rgamma(c(-3.0)), ZERO);
        assert!(rgamma(c(-3.0 + 1e-9)).norm() < 1e-8);
        let z = C::new(-7.3, 0.4);
        assert!(rel(rgamma(z), ONE / gamma(z).unwrap()) < 1e-12);
        let big = C::new(-40.5, 2.0);
        assert!(rel(rgamma(big), ONE / gamma(big).unwrap()) < 1e-11);
    }

    #[test]
    fn ln_sin_pi_large_imaginary() {
        let z = C::new(0.3, 3.0);
        assert!((ln_sin_pi(z).exp() - sin_pi(z)).norm() / sin_pi(z).norm() < 1e-14);
        let z = C::new(-4.7, -300.0);
        let direct = ln_sin_pi(z);
        assert!((direct.re - (300.0 * PI - 2f64.ln())).abs() < 1e-10);
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(C::new(2.5, -1.0), 0), ONE);
        assert_eq!(pochhammer(ONE, 4), c(24.0));
        assert_eq!(pochhammer(c(2.0), 3), c(24.0));
    }

    #[test]
    fn gamma_ratio_asymptotic_examples() {
        let z = C::new(3.0, 4.0);
        assert!((gamma_ratio_asymptotic(z, c(0.7), c(0.7)).unwrap() - ONE).norm() < 1e-15);
        let exact = c(gamma(c(101.0)).unwrap().re / gamma(c(100.0)).unwrap().re);
        assert!(rel(exact, c(100.0)) < 1e-12);
        assert!(rel(gamma_ratio_asymptotic(c(100.0), ONE, ZERO).unwrap(), c(100.0)) < 1e-14);
        let lead = gamma_ratio_asymptotic(c(50.0), c(0.5), c(-0.25)).unwrap();
        assert!(rel(lead, c(50f64.powf(0.75))) < 1e-14);
        let exact = gamma_ratio(c(50.5), c(49.75));
        assert!((exact / lead - 1.0).norm() < 0.02);
        assert!(gamma_ratio_asymptotic(c(-10.0), ONE, ZERO).is_err());
    }

    #[test]
    fn reflection_on_critical_line() {
        for k in 0..=50 {
            let rho = k as f64 * 0.1;
            let lhs = gamma(C::new(0.5, rho)).unwrap() * gamma(C::new(0.5, -rho)).unwrap();
            let rhs = PI / (PI * I * rho).cos();
            assert!(rel(lhs, rhs) < 1e-10, "rho = {rho}");
        }
    }
}
