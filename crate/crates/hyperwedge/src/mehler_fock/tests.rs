use super::*;
use crate::scalar::{c, C};
use std::f64::consts::PI;

fn cfg() -> TransformConfig {
    TransformConfig::default()
}

#[test]
fn reciprocal_kernel_gives_product_of_order_zero() {
    let k = Reciprocal;
    let req = TransformRequest { kernel: &k, nu: c(0.0), z: 3.0, omega: 2.0 };
    let rhs = transform_rhs(&req, &cfg()).unwrap();
    // P_0(2) Q_0(3) = artanh(1/3)
    let exact = (1.0f64 / 3.0).atanh();
    assert!((rhs.value - exact).norm() < 1e-14, "{}", rhs.value);
    let lhs = transform_lhs(&req, &cfg()).unwrap();
    assert!((lhs.value - exact).norm() < 1e-8, "{} err {}", lhs.value, lhs.err_est);
}

#[test]
fn cosine_kernel_matches_addition_formula() {
    for theta in [PI / 4.0, PI / 2.0, PI, 1.5 * PI] {
        let k = Cosine::new(theta).unwrap();
        let req = TransformRequest { kernel: &k, nu: c(0.25), z: 2.0, omega: 1.5 };
        let exact = addition_formula_rhs(c(0.25), theta, 2.0, 1.5).unwrap();
        let rhs = transform_rhs(&req, &cfg()).unwrap();
        assert!((rhs.value - exact).norm() < 1e-12 * exact.norm(), "{theta}: {} vs {exact}", rhs.value);
    }
}

#[test]
fn type_two_kernel_diverges_at_coincident_points() {
    let k = Cosine::new(0.0).unwrap();
    let req = TransformRequest { kernel: &k, nu: c(0.0), z: 2.0, omega: 2.0 };
    assert!(matches!(transform_lhs(&req, &cfg()), Err(crate::Error::Divergent { .. })));
}

fn grid_nus() -> [C; 5] {
    [c(-0.5), c(0.0), c(0.5), c(1.0), C::new(0.5, 1.0)]
}

const PAIRS: [(f64, f64); 3] = [(2.0, 1.5), (3.0, 2.0), (10.0, 1.2)];

#[test]
fn residue_series_matches_independent_values() {
    // mpmath residue sums at ν = 0, z = 3, ω = 2
    let g1 = Rational::new(RationalFamily::OverS, vec![c(0.5)], vec![c(1.0), c(1.5)]).unwrap();
    let d0 = DoublePole::new(c(1.0), 1, 0).unwrap();
    let d1 = DoublePole::new(c(1.0), 1, 1).unwrap();
    let table: [(&dyn MeromorphicKernel, f64); 3] =
        [(&g1, -0.047_930_096_973_605_287), (&d0, -0.052_009_339_393_592_629), (&d1, 0.152_114_805_838_338_88)];
    for (k, want) in table {
        let req = TransformRequest { kernel: k, nu: c(0.0), z: 3.0, omega: 2.0 };
        let got = transform_rhs(&req, &cfg()).unwrap().value;
        assert!((got - want).norm() < 1e-13, "{}: {got} vs {want}", k.name());
    }
}

#[test]
fn lhs_is_symmetric_in_the_points() {
    let g2 = Rational::new(RationalFamily::TimesS, vec![c(0.5)], vec![c(1.0), c(1.5)]).unwrap();
    let cos = Cosine::new(PI / 2.0).unwrap();
    for k in [&g2 as &dyn MeromorphicKernel, &cos] {
        let a = transform_lhs(&TransformRequest { kernel: k, nu: c(0.5), z: 3.0, omega: 2.0 }, &cfg()).unwrap();
        let b = transform_lhs(&TransformRequest { kernel: k, nu: c(0.5), z: 2.0, omega: 3.0 }, &cfg()).unwrap();
        assert!((a.value - b.value).norm() <= 1e-8 * a.value.norm().max(1.0));
    }
}

#[test]
fn coincident_points_type_one() {
    // z = ω is allowed for absolutely convergent integrals; compare with the limit ω → z
    let k = Reciprocal;
    let lhs = transform_lhs(&TransformRequest { kernel: &k, nu: c(0.5), z: 2.0, omega: 2.0 }, &cfg()).unwrap();
    let exact = crate::legendre::legendre_p(crate::legendre::LegendreArgument::real(0.5, 0.0, 2.0)).unwrap()
        * crate::legendre::legendre_q(crate::legendre::LegendreArgument::real(0.5, 0.0, 2.0)).unwrap();
    let err = (lhs.value - exact).norm();
    assert!(err <= lhs.err_est && err < 1e-5 * exact.norm(), "{} vs {exact}, estimate {}", lhs.value, lhs.err_est);
}

#[test]
fn type_two_cosine_matches_addition_formula() {
    let k = Cosine::new(0.0).unwrap();
    for (nu, (z, w)) in [(c(0.0), PAIRS[0]), (c(0.5), PAIRS[1]), (C::new(0.5, 1.0), PAIRS[2])] {
        let exact = addition_formula_rhs(nu, 0.0, z, w).unwrap();
        let req = TransformRequest { kernel: &k, nu, z, omega: w };
        let lhs = transform_lhs(&req, &cfg()).unwrap();
        let rhs = transform_rhs(&req, &cfg()).unwrap();
        assert!((lhs.value - exact).norm() <= 1e-6 * exact.norm().max(1.0), "{nu} {z} {w}: {} vs {exact}", lhs.value);
        assert!((rhs.value - exact).norm() <= 1e-10 * exact.norm().max(1.0));
    }
}

#[test]
fn certified_tail_covers_doubling_change() {
    for (kernel, nu, (z, w)) in [
        (Box::new(Cosine::new(PI / 3.0).unwrap()) as Box<dyn MeromorphicKernel>, c(1.0), PAIRS[2]),
        (Box::new(Cosine::new(PI / 3.0).unwrap()), c(0.5), PAIRS[0]),
        (Box::new(WedgeFirst::new(2.0, 0.4).unwrap()), c(0.0), PAIRS[1]),
    ] {
        let req = TransformRequest { kernel: kernel.as_ref(), nu, z, omega: w };
        for radius in [6.0, 12.0, 24.0] {
            let a = transform_rhs_truncated(&req, radius).unwrap();
            let b = transform_rhs_truncated(&req, 2.0 * radius).unwrap();
            let change = (b.value - a.value).norm();
            assert!(a.tail_estimate >= change, "{} r={radius}: tail {} < change {change}", kernel.name(), a.tail_estimate);
        }
    }
}

#[test]
fn transform_grid_holds() {
    for (name, k) in kernel_catalog() {
        for nu in grid_nus() {
            for (z, w) in PAIRS {
                let req = TransformRequest { kernel: k.as_ref(), nu, z, omega: w };
                let r = verify_transform(&req, &cfg()).unwrap_or_else(|e| panic!("{name} {nu} {z} {w}: {e}"));
                assert!(r.residual <= 1e-8, "{name} {nu} {z} {w}: {r:?}");
            }
        }
    }
}

#[test]
fn wedge_kernels_transform() {
    let sum = KernelSum::new(vec![
        (c(0.5 / PI), Box::new(Cosine::new(0.4).unwrap()) as Box<dyn MeromorphicKernel>),
        (c(-1.0), Box::new(WedgeFirst::new(2.0, 0.5).unwrap())),
        (c(1.0), Box::new(WedgeSecond::new(2.0, -0.4).unwrap())),
    ])
    .unwrap();
    let first = WedgeFirst::new(2.0, 0.5).unwrap();
    let second = WedgeSecond::new(2.0, -0.4).unwrap();
    let wide = WedgeSecond::new(5.0, 1.3).unwrap();
    for k in [&sum as &dyn MeromorphicKernel, &first, &second, &wide] {
        for (z, w) in PAIRS {
            let req = TransformRequest { kernel: k, nu: C::new(0.3, 0.2), z, omega: w };
            let r = verify_transform(&req, &cfg()).unwrap_or_else(|e| panic!("{} {z} {w}: {e}", k.name()));
            assert!(r.residual <= 1e-8, "{} {z} {w}: {r:?}", k.name());
        }
    }
}
