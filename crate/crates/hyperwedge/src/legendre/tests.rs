use super::*;
use crate::scalar::C;

fn cx(p: (f64, f64)) -> C {
    C::new(p.0, p.1)
}

fn rel_err(a: C, b: C) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

// mpmath legenp/legenq (type 3) at 30 digits
const REFERENCE: &[(&str, (f64, f64), (f64, f64), (f64, f64), (f64, f64))] = &[
    ("p", (0.5, 0.0), (0.25, 0.0), (3.0, 0.0), (1.5795662088900124, 0.0)),
    ("p", (0.3333333333333333, 0.0), (-0.25, 0.0), (1.5, 0.0), (0.9763215739146169, 0.0)),
    ("p", (-0.5, 2.0), (0.6, 0.0), (5.0, 0.0), (0.022222241627522496, 0.0)),
    ("p", (1.0, 1.0), (0.0, 1.0), (2.0, 0.5), (0.23819398883896276, 1.0387556956298438)),
    ("p", (40.0, 0.0), (-0.5, 0.0), (2.0, 0.0), (1.0915670158873555e+21, 0.0)),
    ("p", (0.25, 30.0), (-1.5, 0.0), (1.8, 0.0), (0.00027064337165306395, 0.0007179530724704176)),
    ("p", (-0.5, 12.0), (-2.0, 0.0), (3.0, 0.0), (0.00010566198617775879, 0.0)),
    ("p", (2.0, 0.0), (0.5, 0.0), (1.02, 0.0), (2.0060576413205133, 0.0)),
    ("q", (0.5, 0.0), (0.0, 0.0), (3.0, 0.0), (0.1128885424104677, 0.0)),
    ("q", (0.3333333333333333, 0.0), (0.25, 0.0), (1.1, 0.0), (0.8083745524679549, 0.8083745524679549)),
    ("q", (-0.5, 2.0), (0.6, 0.0), (5.0, 0.0), (-0.5121817670065407, -0.32897645470149145)),
    ("q", (1.0, 1.0), (0.0, -1.0), (2.0, 0.5), (-3.0158335936074963, -1.6163594298542077)),
    ("q", (0.5, 0.0), (0.0, 20.0), (1.5, 0.0), (-1.9354749918797942e-42, -1.3870958514842968e-42)),
    ("q", (0.5, 0.5), (0.0, -15.0), (3.0, 0.0), (16436215961.03243, 23602631480.02664)),
    ("q", (0.3, 0.0), (0.2, 0.0), (1.01, 0.0), (1.8709150592705497, 1.3592993568457248)),
    ("q", (0.25, 0.0), (0.0, 1.0), (3.0, 0.0), (0.004949733525647351, -0.00027431424950908354)),
    ("q", (-0.75, 0.0), (0.1, 0.0), (1.3, 0.0), (3.0306161311509245, 0.9847068727321042)),
    ("q", (0.5, 0.0), (40.0, 0.0), (1.2, 0.0), (6.848120847947402e+66, 0.0)),
    ("q", (0.5, 1.0), (60.0, 0.0), (1.5, 0.0), (6.464571503012185e+100, -5.502526755221516e+98)),
    ("p", (0.5, 1.0), (-60.0, 0.0), (1.2, 0.0), (6.884376363837817e-114, 2.253567306340837e-116)),
    ("p", (0.5, 0.0), (-40.0, 0.0), (1.05, 0.0), (6.805754649815088e-81, 0.0)),
    ("q", (0.5, 0.0), (15.7, 0.0), (1.08, 0.0), (2.165143903928011e+22, -2.9800649245849035e+22)),
    ("q", (-0.5, 0.0), (7.5, 0.0), (10.0, 0.0), (0.0, -2294.759483696425)),
    ("p", (-0.5, 6.0), (0.0, 0.0), (1.5, 0.5), (1.4165921262360053, 0.6392728261408466)),
    ("q", (0.75, 0.0), (0.0, 5.0), (1.5, 0.2), (5.383838630086721e-11, -1.5309310357923483e-11)),
    ("p", (-0.5, 40.0), (0.75, 0.0), (2.352409615243247, 0.0), (-1.0457750634274776, 0.0)),
    ("p", (-0.5, 25.0), (1.3, 0.5), (1.3374349463048447, 0.0), (7.0504834570919455, -11.312298885367392)),
    ("p", (30.0, 10.0), (0.5, 0.0), (1.5430806348152437, 0.0), (-5440447666341.16, -3527373150696.8115)),
];

#[test]
fn matches_reference_values() {
    for &(kind, nu, mu, z, want) in REFERENCE {
        let arg = LegendreArgument::new(cx(nu), cx(mu), cx(z));
        let got = if kind == "p" { legendre_p(arg) } else { legendre_q(arg) }.unwrap();
        let err = rel_err(got, cx(want));
        assert!(err < 1e-10, "{kind} ν={nu:?} μ={mu:?} z={z:?}: {got} vs {want:?} ({err:e})");
    }
}

#[test]
fn elementary_values() {
    let p = |nu, mu, z| legendre_p(LegendreArgument::real(nu, mu, z)).unwrap();
    let q = |nu, mu, z| legendre_q(LegendreArgument::real(nu, mu, z)).unwrap();
    assert!((p(0.0, 0.0, 7.3) - 1.0).norm() < 1e-15);
    assert!((p(1.0, 0.0, 2.5) - 2.5).norm() < 1e-14);
    assert!((p(0.7, 0.0, 1.0 + 1e-12) - 1.0).norm() < 1e-9);
    assert!((q(0.0, 0.0, 2.0).re - 0.5493061443340549).abs() < 1e-14);
    assert!((q(1.0, 0.0, 2.0).re - 0.0986122886681098).abs() < 1e-14);
    assert!(q(0.0, 0.0, 1e8).norm() < 1.1e-8);
}

#[test]
fn rejects_cut_and_excluded_parameters() {
    assert!(matches!(legendre_p(LegendreArgument::real(0.5, 0.0, 0.5)), Err(Error::Cut { .. })));
    assert!(matches!(legendre_q(LegendreArgument::real(0.5, 0.0, -3.0)), Err(Error::Cut { .. })));
    assert!(matches!(legendre_q(LegendreArgument::real(0.0, -1.0, 2.0)), Err(Error::ParameterPole { .. })));
    assert!(legendre_q_normalized(LegendreArgument::real(0.0, -1.0, 2.0)).is_ok());
    // off-axis points near the cut are fine
    assert!(legendre_q(LegendreArgument::new(c(0.5), c(0.0), C::new(0.5, 1e-3))).is_ok());
}

#[test]
fn mehler_rule_matches_hypergeometric_path() {
    let cases = [
        (c(0.3), c(0.0), 0.4),
        (c(2.0), c(0.75), 1.3),
        (C::new(-0.5, 7.0), c(1.5), 0.9),
        (C::new(0.2, 3.0), C::new(0.4, 2.0), 2.0),
        (c(10.0), c(-0.25), 0.05),
        (c(-0.5), c(4.0), 3.0),
    ];
    for (nu, m, t) in cases {
        let rule = p_neg_order_rule(nu, m, t).unwrap().value();
        let hyp = p_hyp(nu, -m, c(t.cosh())).unwrap().value();
        assert!(rel_err(rule, hyp) < 1e-11, "ν={nu} m={m} t={t}: {rule} vs {hyp}");
    }
}

#[test]
fn mehler_rule_serves_many_degrees() {
    let rule = mehler::MehlerRule::new(1.2, c(0.5), 60.0).unwrap();
    assert!(rule.len() < 5000);
    for rho in [0.0, 3.0, 17.5, 60.0] {
                let got = rule.eval_cos(rho).value();
        // P_{−1/2+iρ}^{−1/2}(cosh t) = √(2/(π sinh t)) sin(ρt)/ρ
        let want = if rho == 0.0 {
            c((2.0 / (std::f64::consts::PI * 1.2f64.sinh())).sqrt() * 1.2)
        } else {
            c((2.0 / (std::f64::consts::PI * 1.2f64.sinh())).sqrt() * (1.2 * rho).sin() / rho)
        };
        assert!((got - want).norm() < 1e-12 * want.norm().max(1e-3), "ρ={rho}: {got} vs {want}");
    }
}

#[test]
fn q_integral_agrees_with_series() {
    let cases = [(c(0.0), c(0.0), 2.0), (c(0.5), c(0.0), 3.0), (c(0.0), c(1.0), 2.0), (C::new(-0.6, 1.5), C::new(0.3, -2.0), 1.2)];
    for (nu, mu, z) in cases {
        let a = legendre_q_via_integral(nu, mu, z).unwrap();
        let b = legendre_q(LegendreArgument::new(nu, mu, c(z))).unwrap();
        assert!(rel_err(a, b) < 1e-10, "ν={nu} μ={mu} z={z}: {a} vs {b}");
    }
    assert!(matches!(legendre_q_via_integral(c(0.0), c(-0.5), 2.0), Err(Error::Precondition { .. })));
}

#[test]
fn p_integral_agrees_with_series() {
    assert!((legendre_p_neg_order_via_integral(c(0.0), 0.0, 1.0).unwrap() - 1.0).norm() < 1e-13);
    assert!((legendre_p_neg_order_via_integral(c(1.0), 0.0, 1.0).unwrap() - 1f64.cosh()).norm() < 1e-13);
    let a = legendre_p_neg_order_via_integral(c(0.5), 1.0, 0.5).unwrap();
    let b = p_hyp(c(0.5), c(-1.0), c(0.5f64.cosh())).unwrap().value();
    assert!(rel_err(a, b) < 1e-9);
}

#[test]
fn connection_formulas_hold() {
    let cases = [
        (LegendreArgument::real(1.0 / 3.0, 0.25, 2.0), c(3.0)),
        (LegendreArgument::new(C::new(-0.5, 2.0), c(0.6), c(1.5)), c(5.0)),
        (LegendreArgument::real(0.5, 0.0, 1.1), c(10.0)),
        (LegendreArgument::new(C::new(1.0, 1.0), C::new(0.0, -1.0), c(1.5)), c(1.1)),
    ];
    for (arg, w) in cases {
        let r = identity_residuals(arg, w).unwrap();
        assert!(r.max() < 1e-9, "{arg:?} ω={w}: {r:?}");
    }
    let r = identity_residuals(LegendreArgument::real(0.4, 0.0, 2.0), c(3.0)).unwrap();
    assert!(r.order_flip_p < 1e-15);
}

#[test]
fn whipple_relations_hold() {
    for (nu, mu, z) in [(c(0.0), c(0.0), c(2.0)), (c(0.25), C::new(0.0, 1.0), c(3.0)), (c(0.5), c(-0.5), c(1.2))] {
        let r = whipple_residuals(nu, mu, z).unwrap();
        assert!(r.max() < 1e-9, "ν={nu} μ={mu} z={z}: {r:?}");
    }
    let r = whipple_residuals(c(1.0), c(-1.0), c(2.0)).unwrap();
    assert!(r.gamma_degenerate);
    assert!(r.max() < 1e-9);
}

#[test]
fn whipple_route_matches_direct_series() {
    for (nu, mu, z) in [(c(0.3), c(0.2), 1.03), (C::new(0.5, 0.5), C::new(0.0, -15.0), 3.0), (c(-0.3), C::new(0.1, 9.0), 1.7)] {
        let routed = qhat_scaled(nu, mu, c(z)).unwrap().value();
        let hyp = qhat_hyp(nu, mu, c(z)).unwrap().value();
        assert!(rel_err(routed, hyp) < 1e-9, "ν={nu} μ={mu} z={z}: {routed} vs {hyp}");
    }
}

#[test]
fn asymptotic_examples() {
    let a: f64 = 1.0;
    let q = legendre_q(LegendreArgument::new(c(40.0), c(0.0), c(a.cosh()))).unwrap();
    let lead = asymp_q_large_nu(c(40.0), c(0.0), a).unwrap();
    assert!((q / lead - 1.0).norm() <= 5.0 / 40.0);

    let p = legendre_p(LegendreArgument::new(C::new(-0.5, 50.0), c(0.0), c(a.cosh()))).unwrap();
    let lead = asymp_p_imag_degree(50.0, c(0.0), a).unwrap();
    let env = (2.0 / (std::f64::consts::PI * a.sinh() * 50.0)).sqrt();
    assert!((p - lead).norm() / env <= 0.1);

    let dev = |nu: f64| {
        let p = legendre_p(LegendreArgument::real(nu, 0.5, 2f64.cosh())).unwrap();
        (p / asymp_p_large_nu(c(nu), c(0.5), 2.0).unwrap() - 1.0).norm()
    };
    let ratio = dev(30.0) / dev(60.0);
    assert!((ratio - 2.0).abs() <= 0.5, "ratio {ratio}");

    assert!(matches!(asymp_q_large_nu(c(-40.0), c(0.0), 1.0), Err(Error::Regime { .. })));
    assert!(matches!(asymp_p_large_nu(c(-1.5), c(0.0), 1.0), Err(Error::Regime { .. })));
}

#[test]
fn tilde_pair_relation() {
    for x in [1.01, 1.5, 2.0, 3.0, 10.0] {
        let t = asymptotics::tilde(x).unwrap();
        assert!((t.cosh() - x / (x * x - 1.0).sqrt()).abs() < 1e-12 * t.cosh());
        assert!((1.0 / t.sinh().sqrt() - (x * x - 1.0).powf(0.25)).abs() < 1e-12 * (x * x - 1.0).powf(0.25));
    }
    let tp = TildePair::new(3.0, 2.0).unwrap();
    assert!(tp.z_tilde < tp.omega_tilde);
}

#[test]
fn product_asymptotics_examples() {
    let (z, w) = (3.0, 2.0);
    for mu in [20.0, 40.0, 80.0] {
        let exact = p_scaled(c(0.0), c(-mu), c(w)).unwrap().mul(q_scaled(c(0.0), c(mu), c(z)).unwrap()).value()
            * (-I * mu * std::f64::consts::PI).exp();
        let lead = product_asymp_mu(c(0.0), z, w, c(mu)).unwrap();
        assert!((exact / lead - 1.0).norm() <= 10.0 / mu, "μ={mu}");
    }
}

#[test]
fn bound_examples() {
    let prod = |nu: C, rho: f64, z: f64, w: f64| {
        let a = q_scaled(nu, C::new(0.0, -rho), c(z)).unwrap();
        let b = q_scaled(nu, C::new(0.0, rho), c(w)).unwrap();
        a.mul(b).value().norm()
    };
    let (b, _) = bound_qq_product(c(0.0), 1.0, 2.0, 3.0).unwrap();
    assert!(b >= prod(c(0.0), 1.0, 2.0, 3.0));
    let (b, _) = bound_qq_product(c(0.0), 10.0, 2.0, 3.0).unwrap();
    assert!(b < 1e-10 && b >= prod(c(0.0), 10.0, 2.0, 3.0));
    let (b, regime) = bound_qq_product(c(-0.75), 2.0, 1.2, 1.3).unwrap();
    assert_eq!(regime, BoundRegime::DegreeBelowMinusHalf);
    assert!(b >= prod(c(-0.75), 2.0, 1.2, 1.3));
    assert!(matches!(bound_qq_product(c(-1.0), 1.0, 2.0, 3.0), Err(Error::Regime { .. })));

    let pq = |nu: f64, mu: f64, a: f64, b: f64| {
        p_scaled(c(nu), c(-mu), c(a.cosh())).unwrap().mul(q_scaled(c(nu), c(mu), c(b.cosh())).unwrap()).value().norm()
    };
    assert!(bound_pq_product_order_zero(1.0, 1.0, 1.0).unwrap() >= pq(1.0, 0.0, 1.0, 1.0));
    assert!(bound_pq_product(0.5, 2.0, 0.1, 1.0).unwrap() >= pq(0.5, 2.0, 0.1, 1.0));
    let small = bound_pq_product(0.5, 1.5, 1e-3, 1.0).unwrap();
    let smaller = bound_pq_product(0.5, 1.5, 5e-4, 1.0).unwrap();
    assert!((small / smaller - 2f64.powf(1.5)).abs() < 1e-2);
}
