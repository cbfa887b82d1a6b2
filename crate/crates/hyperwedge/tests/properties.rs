//! Randomized invariants of the public API.

use hyperwedge::hyperbolic::{green_plane, hyperbolic_distance, PolarPoint, SpectralParameter};
use hyperwedge::legendre::{identity_residuals, legendre_q, LegendreArgument};
use hyperwedge::mehler_fock::{addition_formula_rhs, transform_lhs, verify_transform, Cosine, Reciprocal, TransformConfig, TransformRequest};
use hyperwedge::quadrature::{invert_laplace, LaplaceInversionConfig};
use hyperwedge::{gamma, ComplexScalar as C};
use proptest::prelude::*;
use std::f64::consts::PI;

fn point() -> impl Strategy<Value = PolarPoint> {
    (0.01f64..3.0, 0.0f64..2.0 * PI).prop_map(|(a, alpha)| PolarPoint::new(a, alpha).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gamma_recurrence(re in -6.0f64..12.0, im in -12.0f64..12.0) {
        prop_assume!(im.abs() > 1e-3 || re.fract().abs() > 1e-3);
        let z = C::new(re, im);
        let lhs = gamma(z + 1.0).unwrap();
        let rhs = z * gamma(z).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm(), "{z}: {lhs} vs {rhs}");
    }

    #[test]
    fn gamma_reflection(re in -4.0f64..4.0, im in -3.0f64..3.0) {
        prop_assume!(im.abs() > 1e-2 || (re - re.round()).abs() > 1e-2);
        let z = C::new(re, im);
        let lhs = gamma(z).unwrap() * gamma(C::new(1.0, 0.0) - z).unwrap();
        let rhs = PI / (z * PI).sin();
        prop_assert!((lhs - rhs).norm() <= 1e-11 * rhs.norm(), "{z}: {lhs} vs {rhs}");
    }

    #[test]
    fn distance_is_a_metric(x in point(), y in point(), z in point()) {
        let (dxy, dyx) = (hyperbolic_distance(&x, &y), hyperbolic_distance(&y, &x));
        prop_assert!(dxy >= 0.0);
        prop_assert!((dxy - dyx).abs() <= 1e-14 * dxy.max(1.0));
        prop_assert_eq!(hyperbolic_distance(&x, &x), 0.0);
        let via = hyperbolic_distance(&x, &z) + hyperbolic_distance(&z, &y);
        prop_assert!(dxy <= via * (1.0 + 1e-12) + 1e-14);
    }

    #[test]
    fn green_plane_is_positive_and_decreasing(s in 0.3f64..20.0, d in 0.01f64..6.0, step in 0.01f64..1.0) {
        let s = SpectralParameter::real(s).unwrap();
        let near = green_plane(d, s).unwrap();
        let far = green_plane(d + step, s).unwrap();
        prop_assert!(near.im.abs() <= 1e-14 * near.re.abs());
        prop_assert!(far.re > 0.0);
        prop_assert!(far.re < near.re);
    }

    #[test]
    fn talbot_inverts_shifted_poles(a in 0.0f64..3.0, t in 0.2f64..5.0) {
        let r = invert_laplace(|s| Ok(1.0 / (s + a)), t, &LaplaceInversionConfig::default()).unwrap();
        let want = (-a * t).exp();
        // contour sums are accurate to an absolute level near 1e-13
        prop_assert!((r.value - want).abs() <= 1e-8 * want + 1e-12, "a = {a}, t = {t}: {} vs {want}", r.value);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn legendre_identities_hold(
        nu_re in -0.45f64..2.0, nu_im in -2.0f64..2.0,
        mu_re in -1.4f64..1.4, mu_im in -1.5f64..1.5,
        z in 1.1f64..6.0, omega in 1.1f64..6.0,
    ) {
        let (nu, mu) = (C::new(nu_re, nu_im), C::new(mu_re, mu_im));
        // stay clear of the poles of Γ(ν ± μ + 1) where relative residuals are meaningless
        for v in [nu + mu + 1.0, nu - mu + 1.0] {
            prop_assume!(v.re > 0.05 || v.im.abs() > 0.05);
        }
        prop_assume!(mu_im.abs() > 0.05 || (mu_re - mu_re.round()).abs() > 0.05);
        let r = identity_residuals(LegendreArgument::new(nu, mu, C::new(z, 0.0)), C::new(omega, 0.0)).unwrap();
        prop_assert!(r.max() <= 1e-9, "{nu} {mu} {z} {omega}: {r:?}");
    }

    #[test]
    fn q_is_real_and_decreasing_for_real_parameters(nu in 0.0f64..4.0, z in 1.05f64..8.0, dz in 0.01f64..2.0) {
        let q = |x: f64| legendre_q(LegendreArgument::real(nu, 0.0, x)).unwrap();
        let (a, b) = (q(z), q(z + dz));
        prop_assert!(a.im.abs() <= 1e-14 * a.re.abs());
        prop_assert!(b.re > 0.0 && b.re < a.re);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn reciprocal_kernel_transform_identity(nu_re in -0.4f64..2.0, nu_im in -1.5f64..1.5, omega in 1.1f64..3.0, gap in 0.2f64..3.0) {
        let req = TransformRequest { kernel: &Reciprocal, nu: C::new(nu_re, nu_im), z: omega + gap, omega };
        let report = verify_transform(&req, &TransformConfig::default()).unwrap();
        prop_assert!(report.residual <= 1e-8, "{report:?}");
    }

    #[test]
    fn cosine_kernel_addition_formula(nu in 0.0f64..2.0, theta in 0.3f64..(2.0 * PI - 0.3), z in 1.2f64..4.0, omega in 1.2f64..4.0) {
        let kernel = Cosine::new(theta).unwrap();
        let req = TransformRequest { kernel: &kernel, nu: C::new(nu, 0.0), z, omega };
        let lhs = transform_lhs(&req, &TransformConfig::default()).unwrap().value;
        let rhs = addition_formula_rhs(C::new(nu, 0.0), theta, z, omega).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-8 * rhs.norm().max(1.0), "{lhs} vs {rhs}");
    }
}
