use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CheckRow, Kernel, Worst};

const SUITE: &str = "specfun";
const SEED: u64 = 0x5eed_0001;

fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(SEED);
    r.set_stream(stream);
    r
}

macro_rules! eval {
    ($w:expr, $input:expr, $e:expr) => {
        match $e {
            Ok(v) => v,
            Err(err) => {
                $w.fail_eval($input, &err);
                continue;
            }
        }
    };
}

pub(crate) fn run<K: Kernel>(k: &K) -> Vec<CheckRow> {
    vec![
        gamma_recurrence(k),
        gamma_reflection(k),
        digamma_recurrence(k),
        digamma_reflection(k),
        connection(k),
        hyp2f1_regimes(k),
        e_monotone(k),
        e_small_theta(k),
        cot_series(k),
    ]
}

fn gamma_recurrence<K: Kernel>(k: &K) -> CheckRow {
    let mut w = Worst::new(SUITE, "gamma_recurrence", "Γ(x+1) = x·Γ(x)", 1e-12);
    let mut r = rng(1);
    for _ in 0..200 {
        let x: f64 = r.random_range(0.1..50.0);
        let lhs = eval!(w, format!("x={x}"), k.gamma(x + 1.0));
        let g = eval!(w, format!("x={x}"), k.gamma(x));
        w.record_rel(|| format!("x={x}"), lhs, x * g);
    }
    w.finish()
}

fn gamma_reflection<K: Kernel>(k: &K) -> CheckRow {
    let mut w = Worst::new(SUITE, "gamma_reflection", "Γ(1−x)·Γ(x) = π/sin(πx)", 1e-12);
    let mut r = rng(2);
    for _ in 0..200 {
        let x: f64 = r.random_range(0.001..0.999);
        let a = eval!(w, format!("x={x}"), k.gamma(1.0 - x));
        let b = eval!(w, format!("x={x}"), k.gamma(x));
        w.record_rel(|| format!("x={x}"), a * b, PI / (PI * x).sin());
    }
    w.finish()
}

fn digamma_recurrence<K: Kernel>(k: &K) -> CheckRow {
    let mut w = Worst::new(SUITE, "digamma_recurrence", "ψ(1+x) = ψ(x) + 1/x", 1e-10);
    let mut r = rng(3);
    for _ in 0..200 {
        let x: f64 = r.random_range(0.1..50.0);
        let lhs = eval!(w, format!("x={x}"), k.digamma(1.0 + x));
        let p = eval!(w, format!("x={x}"), k.digamma(x));
        w.record_abs(|| format!("x={x}"), lhs, p + 1.0 / x);
    }
    w.finish()
}

fn digamma_reflection<K: Kernel>(k: &K) -> CheckRow {
    let mut w = Worst::new(SUITE, "digamma_reflection", "ψ(1−x) = ψ(x) + π·cot(πx)", 1e-10);
    let mut r = rng(4);
    for _ in 0..200 {
        let x: f64 = r.random_range(0.02..0.98);
        let lhs = eval!(w, format!("x={x}"), k.digamma(1.0 - x));
        let p = eval!(w, format!("x={x}"), k.digamma(x));
        w.record_abs(|| format!("x={x}"), lhs, p + PI / (PI * x).tan());
    }
    w.finish()
}

fn connection<K: Kernel>(k: &K) -> CheckRow {
    let mut w = Worst::new(
        SUITE,
        "hyp2f1_connection",
        "₂F₁(1,b;b+1;z) via Euler integral = z ↦ 1/z connection formula",
        1e-9,
    );
    let mut r = rng(5);
    let mut n = 0;
    while n < 100 {
        let b: f64 = r.random_range(0.0..2.0);
        let z: f64 = r.random_range(-50.0..-1.0);
        if b <= 0.0 || (b - 1.0).abs() < 1e-3 || z >= -1.0 {
            continue;
        }
        n += 1;
        let input = format!("a=1 b={b} c={} z={z}", b + 1.0);
        let lhs = eval!(w, input.clone(), k.hyp2f1_integral(1.0, b, b + 1.0, z));
        let rhs = eval!(w, input.clone(), k.connection_rhs(1.0, b, b + 1.0, z));
        w.record_rel(|| input, rhs, lhs);
    }
    w.finish()
}

fn hyp2f1_regimes<K: Kernel>(k: &K) -> CheckRow {
    let mut w = Worst::new(SUITE, "hyp2f1_dispatch", "dispatched ₂F₁ = Euler integral", 1e-10);
    let mut r = rng(6);
    for _ in 0..60 {
        let a: f64 = r.random_range(-1.5..1.5);
        let b: f64 = r.random_range(0.1..1.5);
        let c = b + r.random_range(0.1..2.0);
        let z: f64 = r.random_range(-3.0..0.9);
        let input = format!("a={a} b={b} c={c} z={z}");
        let v = eval!(w, input.clone(), k.hyp2f1(a, b, c, z));
        let i = eval!(w, input.clone(), k.hyp2f1_integral(a, b, c, z));
        w.record(|| input, v, i, ((v - i) / i.abs().max(1.0)).abs());
    }
    w.finish()
}

fn e_monotone<K: Kernel>(k: &K) -> CheckRow {
    let mut w = Worst::new(SUITE, "e_const_increasing", "E(α,θ) strictly increasing in θ", 0.0);
    for &a in &[1.1, 1.3, 1.5, 1.7, 1.9] {
        let mut prev: Option<(f64, f64)> = None;
        for i in 1..=9 {
            let th = a * i as f64 / 10.0;
            let e = eval!(w, format!("α={a} θ={th}"), k.e_const(a, th));
            if let Some((pt, pe)) = prev {
                // Error is how far the step fails to increase.
                w.record(
                    || format!("α={a} θ={pt}→{th}"),
                    e,
                    pe,
                    if e > pe { 0.0 } else { pe - e + f64::MIN_POSITIVE },
                );
            }
            prev = Some((th, e));
        }
    }
    w.finish()
}

fn e_small_theta<K: Kernel>(k: &K) -> CheckRow {
    let mut w = Worst::new(
        SUITE,
        "e_const_small_theta",
        "E(α,θ) → π·cot(πα/2) as θ ↓ 0 (θ = 1e−6)",
        1e-3,
    );
    for &a in &[1.1, 1.5, 1.9] {
        let e = eval!(w, format!("α={a}"), k.e_const(a, 1e-6));
        w.record_abs(|| format!("α={a} θ=1e-6"), e, k.pi_cot_half(a));
    }
    w.finish()
}

fn cot_series<K: Kernel>(k: &K) -> CheckRow {
    let mut w = Worst::new(
        SUITE,
        "cot_partial_fractions",
        "partial-fraction series = π·cot(πα/2)",
        1e-8,
    );
    for i in 1..200 {
        let a = i as f64 / 100.0;
        if (a - 1.0).abs() <= 0.01 + 1e-12 {
            continue;
        }
        let s = eval!(w, format!("α={a}"), k.cot_series(a));
        w.record_abs(|| format!("α={a}"), s, k.pi_cot_half(a));
    }
    w.finish()
}
