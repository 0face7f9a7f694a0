//! Stable sampler law, chain steps, reproducibility and Monte Carlo probes.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stablelike::coeffs::SymbolTriple;
use stablelike::simulate::*;
use stablelike::Error;

fn draws(alpha: f64, n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| sample_symmetric_stable(alpha, &mut rng)).collect()
}

fn mean_se(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let m = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (n - 1.0);
    (m, (var / n).sqrt())
}

#[test]
fn characteristic_function_on_grid() {
    for (i, &a) in [0.6, 1.0, 1.4, 1.8].iter().enumerate() {
        let xs = draws(a, 100_000, 11 + i as u64);
        for &xi in &[0.5f64, 1.0, 2.0] {
            let c: Vec<f64> = xs.iter().map(|x| (xi * x).cos()).collect();
            let (m, se) = mean_se(&c);
            let want = (-xi.powf(a)).exp();
            assert!((m - want).abs() <= 4.0 * se, "α={a} ξ={xi}: {m} vs {want} (se {se})");
        }
    }
}

#[test]
fn characteristic_function_example() {
    let xs = draws(1.2, 100_000, 7);
    let c: Vec<f64> = xs.iter().map(|x| x.cos()).collect();
    let (m, se) = mean_se(&c);
    assert!((m - (-1f64).exp()).abs() <= 3.0 * se);
}

#[test]
fn cauchy_branch() {
    let mut xs = draws(1.0, 100_000, 3);
    let over: Vec<f64> = xs.iter().map(|x| if x.abs() > 1.0 { 1.0 } else { 0.0 }).collect();
    let (p, se) = mean_se(&over);
    assert!((p - 0.5).abs() <= 3.0 * se, "{p}");
    xs.sort_by(f64::total_cmp);
    let med = quantile(&xs, 0.5);
    // SE of the median: 1/(2 f(0) √n) with f(0) = 1/π.
    let se_med = std::f64::consts::PI / (2.0 * (xs.len() as f64).sqrt());
    assert!(med.abs() <= 3.0 * se_med, "{med}");
}

#[test]
fn symmetric_signs() {
    let xs = draws(0.8, 100_000, 5);
    let s: Vec<f64> = xs.iter().map(|x| x.signum()).collect();
    let (m, se) = mean_se(&s);
    assert!(m.abs() <= 3.0 * se);
}

#[test]
fn unit_step_is_a_stable_draw() {
    let t = SymbolTriple::constant(1.3, 0.0, 1.0).unwrap();
    let mut a = path_rng(9, 0);
    let mut b = a.clone();
    let x = step_chain(&t, 2.0, 1, &mut a).unwrap();
    assert_eq!(x - 2.0, sample_symmetric_stable(1.3, &mut b));
}

#[test]
fn drift_only_step() {
    let t = SymbolTriple::parse("1.5", "3*tanh(x)", "1").unwrap();
    let x = step_chain_with_noise(&t, 0.5, 4, 0.0).unwrap();
    assert!((x - (0.5 + 3.0 * 0.5f64.tanh() / 4.0)).abs() < 1e-15);
    let t = SymbolTriple::constant(1.999, 0.0, 1.0).unwrap();
    let x = step_chain_with_noise(&t, 0.0, 10_000, 1.0).unwrap();
    assert!((x - 1e-4f64.powf(1.0 / 1.999)).abs() < 1e-15);
}

#[test]
fn scale_covariance() {
    let a: f64 = 1.4;
    let t1 = SymbolTriple::constant(a, 0.0, 0.7).unwrap();
    let t2 = SymbolTriple::constant(a, 0.0, 0.7 * 2f64.powf(a)).unwrap();
    let (mut r1, mut r2) = (path_rng(1, 4), path_rng(1, 4));
    let mut d1: Vec<f64> = (0..2000)
        .map(|_| step_chain(&t1, 0.0, 3, &mut r1).unwrap().abs())
        .collect();
    let mut d2: Vec<f64> = (0..2000)
        .map(|_| step_chain(&t2, 0.0, 3, &mut r2).unwrap().abs())
        .collect();
    d1.sort_by(f64::total_cmp);
    d2.sort_by(f64::total_cmp);
    for p in [0.25, 0.5, 0.9] {
        let ratio = quantile(&d2, p) / quantile(&d1, p);
        assert!((ratio - 2.0).abs() < 1e-12, "{p}: {ratio}");
    }
}

fn small(seed: u64) -> SimConfig {
    SimConfig {
        m: 10,
        horizon: 20.0,
        n_paths: 16,
        seed,
        record_stride: 10,
        ..SimConfig::default()
    }
}

#[test]
fn ensembles_are_reproducible() {
    let t = SymbolTriple::parse("1.2 + 0.5*exp(-x^2)", "-0.3*tanh(x)", "1").unwrap();
    let a = simulate_ensemble(&t, &small(42)).unwrap();
    let b = simulate_ensemble(&t, &small(42)).unwrap();
    assert_eq!(a, b);
    let c = simulate_ensemble(&t, &small(43)).unwrap();
    assert_ne!(a.terminal, c.terminal);
    assert_eq!(a.records.len(), 16);
    assert_eq!(a.times.len(), 21);
    assert_eq!(a.times[1], 1.0);
    // The schedule does not matter: a one-thread pool gives the same paths.
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let d = pool.install(|| simulate_ensemble(&t, &small(42)).unwrap());
    assert_eq!(a, d);
}

#[test]
fn single_step_ensemble() {
    let t = SymbolTriple::constant(1.5, 0.0, 1.0).unwrap();
    let cfg = SimConfig {
        m: 1,
        horizon: 1.0,
        n_paths: 1,
        seed: 5,
        record_stride: 1,
        ..SimConfig::default()
    };
    let e = simulate_ensemble(&t, &cfg).unwrap();
    assert_eq!(e.records[0].len(), 2);
    let mut rng = path_rng(5, 0);
    assert_eq!(e.terminal[0], sample_symmetric_stable(1.5, &mut rng));
}

#[test]
fn record_cap_is_enforced() {
    let t = SymbolTriple::constant(1.5, 0.0, 1.0).unwrap();
    let cfg = SimConfig {
        record_stride: 1,
        max_records: 1000,
        ..small(1)
    };
    assert!(matches!(simulate_ensemble(&t, &cfg), Err(Error::ResourceLimit { .. })));
}

#[test]
fn csv_export() {
    let t = SymbolTriple::constant(1.5, 0.0, 1.0).unwrap();
    let e = simulate_ensemble(&t, &small(2)).unwrap();
    let csv = e.to_csv(5);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "path_id,step,time,state");
    // 21 records thinned by 5 → 5 rows per path.
    assert_eq!(lines.len(), 1 + 16 * 5);
    assert!(lines[2].starts_with("0,50,5e0,"));
}

#[test]
fn diagnostics_are_bounded_and_consistent() {
    let t = SymbolTriple::constant(1.5, 0.0, 1.0).unwrap();
    let cfg = SimConfig {
        record_stride: 1,
        ..small(8)
    };
    let e = simulate_ensemble(&t, &cfg).unwrap();
    let d = diagnostics(&e, cfg.compact_k).unwrap();
    assert!(d.full_resolution);
    for v in [
        d.return_fraction,
        d.exit_fraction,
        d.occupation_fraction,
        d.occupation_half,
    ] {
        assert!((0.0..=1.0).contains(&v));
    }
    // With every state recorded, the recorded-state path reproduces the exact one.
    let other = diagnostics(&e, cfg.compact_k * (1.0 + 1e-15)).unwrap();
    assert!(!other.full_resolution);
    assert_eq!(other.return_fraction, d.return_fraction);
    assert_eq!(other.occupation_fraction, d.occupation_fraction);
    assert!(d.terminal_abs.q50 <= d.terminal_abs.q90 && d.terminal_abs.q90 <= d.terminal_abs.q99);
}

// Reduced-budget direction checks; the full budget runs in the acceptance suite.
#[test]
fn probes_point_the_right_way() {
    let base = SimConfig {
        m: 20,
        horizon: 300.0,
        n_paths: 160,
        seed: 2024,
        ..SimConfig::default()
    };
    let rec = diagnostics(
        &simulate_ensemble(&SymbolTriple::constant(1.5, 0.0, 1.0).unwrap(), &base).unwrap(),
        10.0,
    )
    .unwrap();
    let tra = diagnostics(
        &simulate_ensemble(&SymbolTriple::constant(0.5, 0.0, 1.0).unwrap(), &base).unwrap(),
        10.0,
    )
    .unwrap();
    assert!(
        rec.return_fraction > tra.return_fraction + 0.3,
        "{} vs {}",
        rec.return_fraction,
        tra.return_fraction
    );
    assert!(tra.terminal_abs.q50 > 1e2);
    let erg_cfg = SimConfig {
        compact_k: 20.0,
        ..base
    };
    let t = SymbolTriple::parse("1.8", "-tanh(x)", "1").unwrap();
    let erg = diagnostics(&simulate_ensemble(&t, &erg_cfg).unwrap(), 20.0).unwrap();
    assert!(erg.occupation_fraction > 0.8, "{}", erg.occupation_fraction);
    assert!(erg.occupation_fraction > rec.occupation_fraction);
}
