use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use stablelike::specfun::{cot_series_check, digamma, e_const, gamma_fn, gauss_2f1, HypergeomParams};

fn scalar(c: &mut Criterion) {
    c.bench_function("gamma", |b| b.iter(|| gamma_fn(black_box(7.3))));
    c.bench_function("digamma", |b| b.iter(|| digamma(black_box(0.37))));
}

fn hypergeometric(c: &mut Criterion) {
    let mut g = c.benchmark_group("hyp2f1");
    for z in [0.3, -0.8, -20.0, 1.0] {
        g.bench_with_input(BenchmarkId::from_parameter(z), &z, |b, &z| {
            b.iter(|| gauss_2f1(HypergeomParams::new(black_box(-0.4), 1.1, 2.1, z)))
        });
    }
    g.finish();
}

fn constants(c: &mut Criterion) {
    c.bench_function("e_const", |b| b.iter(|| e_const(black_box(1.8), black_box(1.4))));
    c.bench_function("cot_series", |b| b.iter(|| cot_series_check(black_box(1.3))));
}

criterion_group!(benches, scalar, hypergeometric, constants);
criterion_main!(benches);
