//! Generator quadrature against frozen extended-precision values
//! (tests/oracles/generator_oracle.py), scaled profiles and closed forms.

#![allow(clippy::excessive_precision)]

use std::f64::consts::PI;

use proptest::prelude::*;
use stablelike::coeffs::{jump_intensity, SymbolTriple};
use stablelike::generator::*;
use stablelike::specfun::{e_const, pi_cot_half, transient_const};
use stablelike::Error;

fn test_fn(kind: &str, theta: f64) -> TestFunction {
    match kind {
        "log" => TestFunction::log_barrier(),
        "bounded" => TestFunction::bounded_power(theta).unwrap(),
        _ => TestFunction::power(theta).unwrap(),
    }
}

// (kind, θ, α, β, γ, x, A V(x))
const ORACLE: &[(&str, f64, f64, f64, f64, f64, f64)] = &[
    ("log", f64::NAN, 1.273, 0.542, 0.888, -21.01, -0.029480292290778849),
    ("bounded", 0.285, 1.449, 0.73, 1.002, 10.68, 0.0058044827516973176),
    ("power", 1.208, 1.742, -0.751, 0.575, -12.033, 1.6349477948953055),
    ("log", f64::NAN, 1.263, -0.637, 0.547, -10.398, 0.050624401623612381),
    ("bounded", 0.268, 0.676, -0.398, 1.123, 0.231, 0.28680507841956646),
    ("power", 1.301, 1.468, -0.251, 1.903, -15.205, 5.0284065230077274),
    ("log", f64::NAN, 1.437, 0.89, 1.357, -7.778, -0.12470237234870785),
    ("bounded", 0.848, 0.903, 0.668, 1.301, 11.19, -0.0047424544199895179),
    ("power", 1.097, 1.609, 0.332, 1.064, 27.544, 0.65625591855299773),
    ("log", f64::NAN, 1.418, -0.188, 0.643, 0.412, 0.25471998805215692),
    ("bounded", 0.583, 0.83, 0.758, 0.675, 11.04, 0.0052076556017499435),
    ("power", 0.334, 0.4, 0.321, 1.505, 13.586, 5.2692257416048893),
    ("log", f64::NAN, 1.424, 0.95, 1.868, -9.934, -0.1116519929807847),
    ("bounded", 0.388, 1.167, 0.9, 0.872, 16.313, 0.0042702094810444621),
    ("power", 1.252, 1.462, -0.148, 0.568, 0.743, 1.2648738766159397),
    ("log", f64::NAN, 1.489, 0.742, 1.657, -14.235, -0.063218705704752572),
    ("bounded", 0.595, 1.299, -0.092, 1.433, -24.802, -0.0017711604190452713),
    ("power", 1.172, 1.674, -0.371, 1.158, -25.319, 0.94752653735766615),
    ("log", f64::NAN, 0.655, -0.014, 1.974, 11.5, 0.31181177632877071),
    ("bounded", 0.807, 0.597, -0.43, 0.587, 0.88, -0.041197896574684869),
    ("power", 0.331, 0.382, -0.109, 1.636, 10.424, 7.7905756001999966),
    ("log", f64::NAN, 1.597, -0.25, 1.835, -24.131, 0.0029868268009855685),
    ("bounded", 0.234, 1.413, -0.995, 1.564, -10.629, 0.0070758381278560368),
    ("power", 1.395, 1.768, -0.186, 1.864, -25.52, 1.6419559014411372),
    ("log", f64::NAN, 1.253, -0.149, 1.86, 0.941, -0.078027732347845084),
    ("bounded", 0.339, 0.962, -0.05, 1.458, 17.11, -0.0033564938677060232),
    ("power", 0.565, 0.964, 0.085, 1.772, -11.766, 0.50730802330328707),
    ("log", f64::NAN, 0.786, -0.556, 1.592, -7.013, 0.24693679996201511),
    ("bounded", 0.633, 1.396, 0.551, 1.135, -2.26, -0.095753631992382714),
    ("power", 0.238, 0.342, -0.985, 1.759, -0.35, 4.7136454402650775),
];

#[test]
fn matches_oracle_on_random_cases() {
    let q = QuadratureConfig::default();
    for &(kind, theta, a, b, g, x, want) in ORACLE {
        let t = SymbolTriple::constant(a, b, g).unwrap();
        let terms = apply_generator(&t, &test_fn(kind, theta), x, &q).unwrap();
        let got = terms.value();
        assert!(
            (got - want).abs() < 5e-9,
            "{kind} θ={theta} α={a} β={b} γ={g} x={x}: {got} vs {want} (est {:e})",
            terms.error_estimate
        );
        assert!(
            terms.error_estimate <= q.abs_tol,
            "{kind} x={x}: estimate {:e}",
            terms.error_estimate
        );
    }
}

#[test]
fn log_barrier_at_origin() {
    let t = SymbolTriple::constant(1.5, 0.0, 1.0).unwrap();
    let terms = apply_generator(&t, &TestFunction::log_barrier(), 0.0, &QuadratureConfig::default()).unwrap();
    assert_eq!(terms.drift, 0.0);
    assert!(terms.value() > 0.0);
    assert!(
        (terms.value() - 2.281_402_922_567_737_3).abs() < 5e-9,
        "{}",
        terms.value()
    );
}

#[test]
fn constant_test_function_gives_zero() {
    let t = SymbolTriple::parse("1.2 + 0.3*tanh(x)", "sin(x)", "1").unwrap();
    let v = TestFunction::log_barrier().with_zero_smoothing();
    for &x in &[-50.0, 0.0, 0.7, 1.0, 1e4] {
        let terms = apply_generator(&t, &v, x, &QuadratureConfig::default()).unwrap();
        assert_eq!(terms.value(), 0.0);
    }
}

#[test]
fn power_needs_theta_below_alpha() {
    let t = SymbolTriple::parse("1.5 + 0.3*tanh(x)", "0", "1").unwrap();
    let v = TestFunction::power(1.3).unwrap();
    let err = apply_generator(&t, &v, 5.0, &QuadratureConfig::default()).unwrap_err();
    assert!(matches!(err, Error::Precondition(_)), "{err}");
    let ok = TestFunction::power(1.1).unwrap();
    assert!(apply_generator(&t, &ok, 5.0, &QuadratureConfig::default()).is_ok());
}

#[test]
fn power_at_origin() {
    let t = SymbolTriple::constant(1.2, 0.0, 1.0).unwrap();
    let v = TestFunction::power(0.9).unwrap();
    let q = QuadratureConfig::default();
    let at0 = apply_generator(&t, &v, 0.0, &q).unwrap().value();
    let near = apply_generator(&t, &v, 1e-7, &q).unwrap().value();
    assert!((at0 - near).abs() < 1e-4, "{at0} vs {near}");
    let low = TestFunction::power(0.5).unwrap();
    assert!(apply_generator(&t, &low, 0.0, &q).is_err());
}

#[test]
fn recurrent_profile_tends_to_cotangent() {
    let t = SymbolTriple::constant(1.5, 0.0, 1.0).unwrap();
    let xs = [10.0, 1e2, 1e3, 1e4];
    let p = drift_profile(
        &t,
        &TestFunction::log_barrier(),
        DriftMode::Recurrent,
        &xs,
        &QuadratureConfig::default(),
    )
    .unwrap();
    assert!(!p.partial);
    // Oracle residuals s_k + π.
    let want = [0.691_606_965_2, 0.130_019_961_6, 0.019_744_794_79, 0.002_662_693_426];
    for (pt, w) in p.points.iter().zip(want) {
        assert!((pt.asymptote + PI).abs() < 1e-14);
        assert!((pt.residual - w).abs() < 1e-8, "x={} {} vs {w}", pt.x, pt.residual);
        assert!(pt.quad_error_estimate < 1e-8);
    }
    let r = p.residuals();
    assert!(r.windows(2).all(|w| w[1].abs() < w[0].abs()));
}

#[test]
fn transient_profile_tends_to_fixed_theta_constant() {
    let t = SymbolTriple::constant(0.5, 0.0, 1.0).unwrap();
    let v = TestFunction::bounded_power(0.25).unwrap();
    let xs = [10.0, 1e2, 1e3, 1e4];
    let p = drift_profile(&t, &v, DriftMode::Transient, &xs, &QuadratureConfig::default()).unwrap();
    let limit = transient_const(0.5, 0.25).unwrap();
    assert!(limit > 0.0);
    let want = [
        1.869_950_660_864_804_2,
        1.520_751_062_568_690_1,
        1.428_340_356_403_476_5,
        1.408_481_507_700_664_1,
    ];
    for (pt, w) in p.points.iter().zip(want) {
        assert!((pt.asymptote - limit).abs() < 1e-14);
        assert!(
            (pt.scaled_value - w).abs() < 1e-8,
            "x={} {} vs {w}",
            pt.x,
            pt.scaled_value
        );
    }
    let r = p.residuals();
    assert!(r.windows(2).all(|w| w[1].abs() < w[0].abs()));
}

#[test]
fn ergodic_profile_with_restoring_drift_decreases() {
    let t = SymbolTriple::parse("1.8", "-tanh(x)", "1").unwrap();
    let v = TestFunction::power(1.4).unwrap();
    let xs = [10.0, 1e2, 1e3, 1e4];
    let p = drift_profile(&t, &v, DriftMode::Ergodic, &xs, &QuadratureConfig::default()).unwrap();
    let s: Vec<f64> = p.points.iter().map(|p| p.scaled_value).collect();
    assert!(s.windows(2).all(|w| w[1] < w[0]), "{s:?}");
    assert!(s[1..].iter().all(|&v| v < 0.0), "{s:?}");
    for pt in &p.points {
        assert!(pt.residual.abs() < 0.05, "x={} residual {}", pt.x, pt.residual);
    }
}

#[test]
fn recurrent_scaling_at_large_x() {
    let q = QuadratureConfig::default();
    for &a in &[1.2, 1.5, 1.8] {
        for &b in &[0.0, 0.3, -0.3] {
            let t = SymbolTriple::constant(a, b, 1.0).unwrap();
            let p = drift_profile(&t, &TestFunction::log_barrier(), DriftMode::Recurrent, &[1e4], &q).unwrap();
            let pt = p.points[0];
            assert!(
                pt.residual.abs() < 0.05,
                "α={a} β={b}: s={} a={}",
                pt.scaled_value,
                pt.asymptote
            );
        }
    }
}

#[test]
fn compensated_core_is_negligible() {
    let q = QuadratureConfig::default();
    for &a in &[0.7, 1.5] {
        let t = SymbolTriple::constant(a, 0.0, 1.0).unwrap();
        let x = 1e4;
        let terms = apply_generator(&t, &TestFunction::log_barrier(), x, &q).unwrap();
        let c = jump_intensity(a, 1.0).unwrap();
        let scaled = terms.core * a / c * (1.0 + x).powf(a);
        assert!(scaled.abs() < 1e-2, "α={a}: {scaled}");
    }
}

#[test]
fn even_symbol_gives_even_generator() {
    let t = SymbolTriple::parse("1.3 + 0.4*exp(-x^2)", "0", "1 + 0.5*cos(x)").unwrap();
    let q = QuadratureConfig::default();
    let fns = [
        TestFunction::log_barrier(),
        TestFunction::bounded_power(0.4).unwrap(),
        TestFunction::power(1.1).unwrap(),
    ];
    for v in fns {
        for &x in &[0.3, 0.999, 1.5, 7.0, 250.0] {
            let a = apply_generator(&t, &v, x, &q).unwrap().value();
            let b = apply_generator(&t, &v, -x, &q).unwrap().value();
            assert!((a - b).abs() < 2e-9, "{:?} x={x}: {a} vs {b}", v.kind());
        }
    }
}

#[test]
fn ergodic_scaling_identity_for_constant_symbols() {
    let q = QuadratureConfig::default();
    for &(a, b, th) in &[(1.8, 0.0, 1.4), (1.5, -0.5, 1.2), (1.9, 0.3, 1.0), (1.2, 0.0, 0.6)] {
        let t = SymbolTriple::constant(a, b, 1.0).unwrap();
        let v = TestFunction::power(th).unwrap();
        let p = drift_profile(&t, &v, DriftMode::Ergodic, &[1e2, 1e4], &q).unwrap();
        let c = jump_intensity(a, 1.0).unwrap();
        let x: f64 = 1e4;
        let closed = a / c * x.powf(a - 1.0) * b + a / (th * c) * x.powf(a - th) + e_const(a, th).unwrap();
        let pt = p.points[1];
        assert!(
            (pt.scaled_value - closed).abs() < 0.05,
            "α={a} β={b} θ={th}: {} vs {closed}",
            pt.scaled_value
        );
        assert!(p.points[1].residual.abs() < p.points[0].residual.abs());
    }
}

#[test]
fn asymptotic_rhs_closed_forms() {
    let t = SymbolTriple::constant(1.5, 0.0, 1.0).unwrap();
    for &x in &[-1e3, 0.0, 2.0, 1e6] {
        assert!((asymptotic_rhs(&t, x, DriftMode::Recurrent, None).unwrap() + PI).abs() < 1e-14);
    }
    let t = SymbolTriple::constant(1.2, 0.5, 1.0).unwrap();
    let v = asymptotic_rhs(&t, 100.0, DriftMode::Recurrent, None).unwrap();
    assert!((v - 3.497_700_970_696_303_3).abs() < 1e-12, "{v}");
    let t = SymbolTriple::parse("1.8", "-tanh(x)", "1").unwrap();
    let v = asymptotic_rhs(&t, 100.0, DriftMode::Ergodic, Some(1.4)).unwrap();
    assert!((v + 376.404_068_223_075_82).abs() < 1e-9, "{v}");
    assert!(asymptotic_rhs(&t, 100.0, DriftMode::Ergodic, None).is_err());
    // Transient without θ falls back to the cotangent term.
    let t = SymbolTriple::constant(0.5, 0.0, 1.0).unwrap();
    let v = asymptotic_rhs(&t, 100.0, DriftMode::Transient, None).unwrap();
    assert!((v - pi_cot_half(0.5)).abs() < 1e-15);
}

#[test]
fn profile_rejects_bad_inputs() {
    let t = SymbolTriple::constant(1.5, 0.0, 1.0).unwrap();
    let q = QuadratureConfig::default();
    let v = TestFunction::log_barrier();
    assert!(drift_profile(&t, &v, DriftMode::Ergodic, &[10.0], &q).is_err());
    assert!(drift_profile(&t, &v, DriftMode::Recurrent, &[10.0, -10.0], &q).is_err());
    assert!(drift_profile(&t, &v, DriftMode::Recurrent, &[], &q).is_err());
    let bad = QuadratureConfig {
        core_split: 1.5,
        ..QuadratureConfig::default()
    };
    assert!(apply_generator(&t, &v, 3.0, &bad).is_err());
}

#[test]
fn profile_csv_layout() {
    let t = SymbolTriple::constant(1.5, 0.0, 1.0).unwrap();
    let p = drift_profile(
        &t,
        &TestFunction::log_barrier(),
        DriftMode::Recurrent,
        &[10.0, 100.0],
        &QuadratureConfig::default(),
    )
    .unwrap();
    let csv = p.to_csv();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "x,scaled_value,asymptote,residual,quad_error_estimate");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("1e1,"));
}

#[test]
fn auxiliary_limits() {
    let r = lemma_limit_checks();
    assert!(r.passed);
    assert_eq!(r.shift_ratio.iter().filter(|c| c.shift == 0.0).count(), 2);
    assert!(r.shift_ratio.iter().filter(|c| c.shift == 0.0).all(|c| c.value == 0.0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // Jump parts scale linearly with γ; the drift part does not see γ.
    #[test]
    fn jump_part_linear_in_scale(a in 0.3f64..1.9, b in -1.0f64..1.0, g in 0.2f64..3.0, x in -40.0f64..40.0) {
        prop_assume!((x.abs() - 1.0).abs() > 1e-3);
        let v = TestFunction::log_barrier();
        let q = QuadratureConfig::default();
        let t1 = SymbolTriple::constant(a, b, 1.0).unwrap();
        let tg = SymbolTriple::constant(a, b, g).unwrap();
        let r1 = apply_generator(&t1, &v, x, &q).unwrap();
        let rg = apply_generator(&tg, &v, x, &q).unwrap();
        prop_assert_eq!(r1.drift, rg.drift);
        let j1 = r1.small_jumps + r1.large_jumps;
        let jg = rg.small_jumps + rg.large_jumps;
        prop_assert!((jg - g * j1).abs() < 4e-9 * g.max(1.0), "{} vs {}", jg, g * j1);
    }

    // A bounded test function sees a generator bounded by the jump mass it can move.
    #[test]
    fn bounded_power_is_finite_and_estimated(a in 0.2f64..1.95, th in 0.05f64..0.95, x in -1e3f64..1e3) {
        let t = SymbolTriple::constant(a, 0.0, 1.0).unwrap();
        let v = TestFunction::bounded_power(th).unwrap();
        let r = apply_generator(&t, &v, x, &QuadratureConfig::default()).unwrap();
        prop_assert!(r.value().is_finite());
        prop_assert!(r.error_estimate <= 1e-9);
    }
}
