//! Finite-difference check of `(s − 1/4 + Δ) u = 0` with `−Δ = (1/sinh a) ∂_a(sinh a ∂_a) + (1/sinh² a) ∂²_α`.

use super::{PolarPoint, SpectralParameter};
use crate::error::{precondition, Result};
use crate::scalar::C;

/// `|(s − 1/4) u(x₀) + Δu(x₀)|` with second-order central differences of width `step`
/// in `a` and in `α`.
pub fn pde_residual<F: FnMut(&PolarPoint) -> Result<C>>(mut field: F, x0: &PolarPoint, s: SpectralParameter, step: f64) -> Result<f64> {
    const OP: &str = "pde_residual";
    if !(step >= 1e-7 && step.is_finite()) {
        return Err(precondition(OP, format!("step {step} is too small for central differences")));
    }
    if !(x0.a > step) {
        return Err(precondition(OP, format!("radius a = {} must exceed the step {step}", x0.a)));
    }
    let at = |a: f64, alpha: f64| PolarPoint { a, alpha };
    let u = field(x0)?;
    let (ap, am) = (field(&at(x0.a + step, x0.alpha))?, field(&at(x0.a - step, x0.alpha))?);
    let (bp, bm) = (field(&at(x0.a, x0.alpha + step))?, field(&at(x0.a, x0.alpha - step))?);
    let h2 = step * step;
    let u_aa = (ap - 2.0 * u + am) / h2;
    let u_a = (ap - am) / (2.0 * step);
    let u_bb = (bp - 2.0 * u + bm) / h2;
    let sh = x0.a.sinh();
    let beltrami = u_aa + u_a * (x0.a.cosh() / sh) + u_bb / (sh * sh);
    Ok(((s.s() - 0.25) * u - beltrami).norm())
}
