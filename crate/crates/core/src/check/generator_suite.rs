use crate::coeffs::SymbolTriple;
use crate::generator::{
    apply_generator, drift_profile, lemma_limit_checks, phi_derivs, DriftMode, QuadratureConfig, TestFunction,
};

use super::{CheckRow, Worst};

const SUITE: &str = "generator";

pub(crate) fn run() -> Vec<CheckRow> {
    vec![
        smoothing(),
        lemmas(),
        reference_values(),
        constant_v(),
        recurrent_limit(),
        symmetry(),
    ]
}

fn smoothing() -> CheckRow {
    let mut w = Worst::new(SUITE, "smoothing_c2_match", "φ, φ′, φ″ match |x| at ±1", 1e-13);
    for &s in &[-1.0f64, 1.0] {
        let d = phi_derivs(s);
        w.record_abs(|| format!("x={s} φ"), d[0], 1.0);
        w.record_abs(|| format!("x={s} φ′"), d[1], s);
        w.record_abs(|| format!("x={s} φ″"), d[2], 0.0);
    }
    w.finish()
}

fn lemmas() -> CheckRow {
    let r = lemma_limit_checks();
    let mut w = Worst::new(SUITE, "auxiliary_limits", "ln(1+x)/x series and shift ratio → 0", 0.0);
    for c in &r.log_series {
        w.record(
            || format!("log series x={}", c.x),
            c.series,
            c.closed_form,
            if c.passed { 0.0 } else { 1.0 },
        );
    }
    for c in &r.shift_ratio {
        w.record(
            || format!("shift ratio α={} R={}", c.alpha, c.shift),
            c.value,
            0.0,
            if c.passed { 0.0 } else { 1.0 },
        );
    }
    if !r.passed {
        w.record(|| "monotone decrease".into(), 0.0, 0.0, 1.0);
    }
    w.finish()
}

// Extended-precision quadrature values of A V(x).
const REFERENCE: &[(f64, f64, f64, f64, f64)] = &[
    // (α, β, γ, x, A V(x)) for V = ln(1 + φ)
    (1.5, 0.0, 1.0, 0.0, 2.281_402_922_567_737_3),
    (1.273, 0.542, 0.888, -21.01, -0.029_480_292_290_778_849),
    (1.418, -0.188, 0.643, 0.412, 0.254_719_988_052_156_92),
    (0.655, -0.014, 1.974, 11.5, 0.311_811_776_328_770_71),
];

fn reference_values() -> CheckRow {
    let mut w = Worst::new(
        SUITE,
        "generator_reference",
        "A V(x) against extended-precision quadrature",
        5e-9,
    );
    let q = QuadratureConfig::default();
    for &(a, b, g, x, want) in REFERENCE {
        let input = format!("α={a} β={b} γ={g} x={x}");
        let got =
            SymbolTriple::constant(a, b, g).and_then(|t| apply_generator(&t, &TestFunction::log_barrier(), x, &q));
        match got {
            Ok(terms) => w.record_abs(|| input, terms.value(), want),
            Err(e) => w.fail_eval(input, &e),
        }
    }
    w.finish()
}

fn constant_v() -> CheckRow {
    let mut w = Worst::new(SUITE, "constant_test_function", "A(const) = 0", 0.0);
    let q = QuadratureConfig::default();
    let v = TestFunction::log_barrier().with_zero_smoothing();
    for &x in &[-3.0, 0.0, 1.0, 1e3] {
        match SymbolTriple::parse("1.2 + 0.3*tanh(x)", "sin(x)", "1").and_then(|t| apply_generator(&t, &v, x, &q)) {
            Ok(r) => w.record_abs(|| format!("x={x}"), r.value(), 0.0),
            Err(e) => w.fail_eval(format!("x={x}"), &e),
        }
    }
    w.finish()
}

fn recurrent_limit() -> CheckRow {
    let mut w = Worst::new(
        SUITE,
        "recurrent_scaling",
        "(α/c)(1+x)^α·A V(x) → drift term + π·cot(πα/2) at x = 1e4",
        0.05,
    );
    let q = QuadratureConfig::default();
    for &(a, b) in &[(1.5, 0.0), (1.2, 0.3), (1.8, -0.3)] {
        let input = format!("α={a} β={b}");
        let r = SymbolTriple::constant(a, b, 1.0)
            .and_then(|t| drift_profile(&t, &TestFunction::log_barrier(), DriftMode::Recurrent, &[1e4], &q));
        match r {
            Ok(p) if !p.points.is_empty() => {
                let pt = p.points[0];
                w.record_abs(|| input, pt.scaled_value, pt.asymptote);
            }
            Ok(p) => w.fail_eval(input, &crate::Error::Validation(format!("{:?}", p.failures))),
            Err(e) => w.fail_eval(input, &e),
        }
    }
    w.finish()
}

fn symmetry() -> CheckRow {
    let mut w = Worst::new(SUITE, "even_symmetry", "A V(x) = A V(−x) for even symbols", 2e-9);
    let q = QuadratureConfig::default();
    let t = match SymbolTriple::parse("1.3 + 0.4*exp(-x^2)", "0", "1 + 0.5*cos(x)") {
        Ok(t) => t,
        Err(e) => {
            w.fail_eval("symbol".into(), &e);
            return w.finish();
        }
    };
    for &x in &[0.3, 1.5, 40.0] {
        let v = TestFunction::log_barrier();
        match (apply_generator(&t, &v, x, &q), apply_generator(&t, &v, -x, &q)) {
            (Ok(a), Ok(b)) => w.record_abs(|| format!("x=±{x}"), a.value(), b.value()),
            (Err(e), _) | (_, Err(e)) => w.fail_eval(format!("x={x}"), &e),
        }
    }
    w.finish()
}
