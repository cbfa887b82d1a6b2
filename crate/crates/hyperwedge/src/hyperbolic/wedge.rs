//! The boundary correction `H^{1/4}`, the Green's function and the heat kernel of a wedge.
//!
//! `H^{1/4}(x, y; s) = (1/π²) ∫_0^∞ Q_ν^{−iρ}(cosh a) Q_ν^{iρ}(cosh b) B(ρ) dρ` with
//! `B(ρ) = sinh(πρ) cosh((γ−α−β)ρ)/sinh(γρ) − sinh((π−γ)ρ) cosh((α−β)ρ)/sinh(γρ)`,
//! which is the transform of the kernel `cos((γ−α−β)s)/(2 sin γs) − sin((π−γ)s) cos((α−β)s)/(2 sin πs sin γs)`.

use super::plane::{green_plane, heat_plane_points};
use super::{hyperbolic_distance, PolarPoint, SpectralParameter, WedgeSpec};
use crate::error::{precondition, Result};
use crate::mehler_fock::{
    transform_lhs, transform_rhs, Cosine, KernelSum, MeromorphicKernel, SeriesEstimate, TransformConfig, TransformRequest,
    WedgeFirst, WedgeSecond,
};
use crate::quadrature::{invert_laplace_parallel, Estimate, LaplaceInversionConfig, QuadratureConfig};
use crate::scalar::{c, C, ONE};
use std::f64::consts::PI;

fn check_points(op: &'static str, x: &PolarPoint, y: &PolarPoint, w: &WedgeSpec) -> Result<()> {
    if !w.contains_closure(x) {
        return Err(precondition(op, format!("x = ({}, {}) must lie in the closed wedge off the vertex", x.a, x.alpha)));
    }
    if !w.contains(y) {
        return Err(precondition(op, format!("y = ({}, {}) must lie inside the wedge", y.a, y.alpha)));
    }
    Ok(())
}

fn correction_terms(x: &PolarPoint, y: &PolarPoint, w: &WedgeSpec) -> Result<Vec<(C, Box<dyn MeromorphicKernel>)>> {
    let g = w.gamma();
    Ok(vec![
        (ONE, Box::new(WedgeFirst::new(g, g - x.alpha - y.alpha)?)),
        (-ONE, Box::new(WedgeSecond::new(g, x.alpha - y.alpha)?)),
    ])
}

fn scaled_transform(kernel: &dyn MeromorphicKernel, s: SpectralParameter, a: f64, b: f64, cfg: &TransformConfig) -> Result<Estimate> {
    let req = TransformRequest { kernel, nu: s.nu(), z: a.cosh(), omega: b.cosh() };
    transform_lhs(&req, cfg)
}

/// `H^{1/4}(x, y; s)` by quadrature, for `x` in the closed wedge and `y` inside it.
pub fn h_quarter(x: &PolarPoint, y: &PolarPoint, s: SpectralParameter, w: &WedgeSpec, cfg: &TransformConfig) -> Result<Estimate> {
    check_points("h_quarter", x, y, w)?;
    let kernel = KernelSum::new(correction_terms(x, y, w)?)?;
    scaled_transform(&kernel, s, x.a, y.a, cfg)
}

/// `H^{1/4}(x, y; s)` by its residue series; requires `a < b`.
///
/// The poles `kπ/γ` of both parts merge; a coincidence of an integer with some `kπ/γ`
/// is rejected as a pole collision.
pub fn h_quarter_series(
    x: &PolarPoint,
    y: &PolarPoint,
    s: SpectralParameter,
    w: &WedgeSpec,
    cfg: &TransformConfig,
) -> Result<SeriesEstimate> {
    check_points("h_quarter_series", x, y, w)?;
    if !(x.a < y.a) {
        return Err(precondition("h_quarter_series", format!("series needs a < b, got a = {}, b = {}", x.a, y.a)));
    }
    let kernel = KernelSum::new(correction_terms(x, y, w)?)?;
    let req = TransformRequest { kernel: &kernel, nu: s.nu(), z: y.a.cosh(), omega: x.a.cosh() };
    transform_rhs(&req, cfg)
}

/// Green's function of the wedge for interior `x ≠ y`, as one fused integral of
/// `(1/2π)·cosine kernel − correction kernel`; nearly aligned points use
/// [`green_wedge_subtractive`].
pub fn green_wedge(x: &PolarPoint, y: &PolarPoint, s: SpectralParameter, w: &WedgeSpec, cfg: &TransformConfig) -> Result<Estimate> {
    const OP: &str = "green_wedge";
    if !w.contains(x) || !w.contains(y) {
        return Err(precondition(OP, "both points must lie inside the wedge"));
    }
    if x == y {
        return Err(precondition(OP, "coincident points"));
    }
    let theta = (x.alpha - y.alpha).abs();
    if theta.min(2.0 * PI - theta) < FUSED_MIN_ANGLE {
        return green_wedge_subtractive(x, y, s, w, cfg);
    }
    let mut terms: Vec<(C, Box<dyn MeromorphicKernel>)> =
        vec![(c(0.5 / PI), Box::new(Cosine::new((x.alpha - y.alpha).abs())?))];
    for (k, g) in correction_terms(x, y, w)? {
        terms.push((-k, g));
    }
    let kernel = KernelSum::new(terms)?;
    scaled_transform(&kernel, s, x.a, y.a, cfg)
}

/// Angular separation below which [`green_wedge`] subtracts the correction from the
/// closed-form plane Green's function instead of fusing the kernels.
const FUSED_MIN_ANGLE: f64 = 0.1;

/// `green_plane(d(x, y), s) − h_quarter(x, y; s)`, the unfused form.
pub fn green_wedge_subtractive(
    x: &PolarPoint,
    y: &PolarPoint,
    s: SpectralParameter,
    w: &WedgeSpec,
    cfg: &TransformConfig,
) -> Result<Estimate> {
    if !w.contains(x) || !w.contains(y) || x == y {
        return Err(precondition("green_wedge_subtractive", "need distinct points inside the wedge"));
    }
    let h = h_quarter(x, y, s, w, cfg)?;
    let g = green_plane(hyperbolic_distance(x, y), s)?;
    Ok(Estimate { value: g - h.value, err_est: h.err_est })
}

/// Value of the wedge heat kernel with the spread of the Laplace inversion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatWedge {
    pub value: f64,
    pub inversion_err: f64,
}

/// `K_W(x, y; t) = K(d(x, y), t) − e^{−t/4} 𝓛⁻¹{s ↦ H^{1/4}(x, y; s)}(t)` for interior
/// points, `x = y` included.
pub fn heat_wedge(
    x: &PolarPoint,
    y: &PolarPoint,
    t: f64,
    w: &WedgeSpec,
    inv_cfg: &LaplaceInversionConfig,
    cfg: &TransformConfig,
) -> Result<HeatWedge> {
    const OP: &str = "heat_wedge";
    if !w.contains(x) || !w.contains(y) {
        return Err(precondition(OP, "both points must lie inside the wedge"));
    }
    if !(t > 0.0 && t.is_finite()) {
        return Err(precondition(OP, format!("time t = {t} must be positive")));
    }
    let kernel = KernelSum::new(correction_terms(x, y, w)?)?;
    let h = |s: C| -> Result<C> {
        if s.re * t < NODE_CUTOFF_EXPONENT {
            return Ok(c(0.0));
        }
        Ok(scaled_transform(&kernel, SpectralParameter::new(s)?, x.a, y.a, cfg)?.value)
    };
    let inv = invert_laplace_parallel(h, t, inv_cfg)?;
    let plane = heat_plane_points(x, y, t, &heat_quadrature(cfg))?;
    let damp = (-0.25 * t).exp();
    Ok(HeatWedge { value: plane - damp * inv.value, inversion_err: damp * inv.err_est })
}

/// Contour nodes with `Re(s)·t` below this are dropped. Far left on the contour the
/// correction transform cancels catastrophically, while `e^{st}` is below `1e-26` there.
const NODE_CUTOFF_EXPONENT: f64 = -60.0;

fn heat_quadrature(cfg: &TransformConfig) -> QuadratureConfig {
    QuadratureConfig { abs_tol: 1e-16, ..cfg.quadrature }
}
