use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;

use stablelike::simulate::{sample_symmetric_stable, simulate_ensemble, SimConfig};
use stablelike_bench::ergodic;

fn sampler(c: &mut Criterion) {
    let mut g = c.benchmark_group("sample_symmetric_stable");
    g.throughput(Throughput::Elements(1));
    for a in [0.5, 1.0, 1.8] {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        g.bench_with_input(BenchmarkId::from_parameter(a), &a, |b, &a| {
            b.iter(|| sample_symmetric_stable(black_box(a), &mut rng))
        });
    }
    g.finish();
}

fn ensemble(c: &mut Criterion) {
    let t = ergodic();
    let cfg = SimConfig {
        horizon: 10.0,
        n_paths: 64,
        ..SimConfig::default()
    };
    let mut g = c.benchmark_group("ensemble");
    g.sample_size(10);
    g.throughput(Throughput::Elements(cfg.steps() * cfg.n_paths as u64));
    g.bench_function("64x1000", |b| b.iter(|| simulate_ensemble(&t, &cfg)));
    g.finish();
}

criterion_group!(benches, sampler, ensemble);
criterion_main!(benches);
