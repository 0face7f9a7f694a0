use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Serialize;

use stablelike::check::{run_checks, Fault, FaultyKernel, ReferenceKernel, Suite};
use stablelike::classifier::{classify as classify_triple, classify_f_ergodic, ClassifierConfig, GridSpec, Label};
use stablelike::coeffs::{SymbolFile, SymbolTriple};
use stablelike::generator::{drift_profile, DriftMode, DriftProfile, QuadratureConfig, TestFunction};
use stablelike::simulate::{diagnostics, simulate_ensemble, Diagnostics, ProbeBands, SimConfig, RNG_ID};

use crate::manifest::RunManifest;
use crate::output::{fmt_opt, json_bytes};
use crate::{CheckArgs, ClassifyArgs, DriftArgs, Global, SimulateArgs};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_INCONCLUSIVE: u8 = 2;

fn load_symbol(path: &Path) -> Result<(SymbolFile, SymbolTriple)> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file = SymbolFile::from_toml_str(&text).with_context(|| format!("in {}", path.display()))?;
    let triple = file.triple().with_context(|| format!("in {}", path.display()))?;
    Ok((file, triple))
}

fn note(g: &Global, msg: impl FnOnce() -> String) {
    if g.verbose > 0 {
        eprintln!("{}", msg());
    }
}

#[derive(Serialize)]
struct ClassifyEcho<'a> {
    symbol: &'a SymbolFile,
    classifier: &'a ClassifierConfig,
    eta: Option<f64>,
}

pub fn classify(g: &Global, a: ClassifyArgs) -> Result<u8> {
    let mut man = RunManifest::start("classify", &[&a.symbol])?;
    let (file, triple) = load_symbol(&a.symbol)?;
    let d = ClassifierConfig::default();
    let cfg = ClassifierConfig {
        grid: GridSpec {
            x0: a.x0.unwrap_or(d.grid.x0),
            ratio: a.ratio.unwrap_or(d.grid.ratio),
            count: a.count.unwrap_or(d.grid.count),
            two_sided: !a.one_sided,
        },
        margin_tol: a.margin_tol.unwrap_or(d.margin_tol),
        trend_tol: a.trend_tol.unwrap_or(d.trend_tol),
        alpha_gate_tol: d.alpha_gate_tol,
        theta_steps: a.theta_steps.unwrap_or(d.theta_steps),
    };
    man.config(&ClassifyEcho {
        symbol: &file,
        classifier: &cfg,
        eta: a.eta,
    })?;
    for w in &triple.report().warnings {
        eprintln!("warning: {w}");
    }
    let verdict = match a.eta {
        Some(eta) => classify_f_ergodic(&triple, eta, &cfg)?,
        None => classify_triple(&triple, &cfg)?,
    };
    note(g, || {
        let mut s = String::new();
        for c in &verdict.conditions {
            s.push_str(&format!(
                "condition {} theta={} value={:.6} trend={:.2e} certified={}\n",
                c.id,
                fmt_opt(c.theta),
                c.value,
                c.trend,
                c.certified
            ));
        }
        s
    });
    match &a.out.json {
        Some(p) => man.emit(p, &json_bytes(&verdict)?)?,
        None => {
            let caveats: Vec<_> = verdict
                .caveats
                .iter()
                .map(|c| serde_json::to_value(c).map(|v| v.as_str().unwrap_or_default().to_string()))
                .collect::<Result<_, _>>()?;
            println!(
                "{}  margin={:.6}  fired={}  caveats=[{}]",
                verdict.label,
                verdict.margin,
                verdict.fired.map_or("-".to_string(), |c| c.to_string()),
                caveats.join(", ")
            );
        }
    }
    if a.out.csv.is_some() {
        bail!("classify has no CSV output");
    }
    let code = if verdict.label == Label::Inconclusive {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    };
    man.finish(g.manifest.as_deref(), code)?;
    Ok(code)
}

#[derive(Serialize)]
struct DriftEcho<'a> {
    symbol: &'a SymbolFile,
    mode: DriftMode,
    theta: Option<f64>,
    grid: &'a [f64],
    quadrature: &'a QuadratureConfig,
}

#[derive(Serialize)]
struct DriftSummary<'a> {
    mode: DriftMode,
    theta: Option<f64>,
    points: usize,
    partial: bool,
    /// max |residual| over the larger half of the grid
    tail_max_abs_residual: Option<f64>,
    max_quad_error_estimate: Option<f64>,
    profile: &'a DriftProfile,
}

fn default_drift_grid() -> Vec<f64> {
    GridSpec::default().magnitudes()
}

pub fn drift(g: &Global, a: DriftArgs) -> Result<u8> {
    let mut man = RunManifest::start("drift", &[&a.symbol])?;
    let (file, triple) = load_symbol(&a.symbol)?;
    let mode: DriftMode = a.mode.parse()?;
    let v = match (mode, a.theta) {
        (DriftMode::Recurrent, None) => TestFunction::log_barrier(),
        (DriftMode::Recurrent, Some(_)) => bail!("--theta does not apply to the recurrent mode"),
        (DriftMode::Transient, Some(t)) => TestFunction::bounded_power(t)?,
        (DriftMode::Ergodic, Some(t)) => TestFunction::power(t)?,
        (m, None) => bail!("--theta is required for the {} mode", m.name()),
    };
    let xs = a.grid.unwrap_or_else(default_drift_grid);
    let q = QuadratureConfig::default().with_abs_tol(a.abs_tol);
    man.config(&DriftEcho {
        symbol: &file,
        mode,
        theta: a.theta,
        grid: &xs,
        quadrature: &q,
    })?;
    let profile = drift_profile(&triple, &v, mode, &xs, &q)?;
    let res = profile.residuals();
    let tail = &res[res.len() - res.len().div_ceil(2)..];
    let summary = DriftSummary {
        mode,
        theta: a.theta,
        points: profile.points.len(),
        partial: profile.partial,
        tail_max_abs_residual: tail.iter().map(|r| r.abs()).reduce(f64::max),
        max_quad_error_estimate: profile.points.iter().map(|p| p.quad_error_estimate).reduce(f64::max),
        profile: &profile,
    };
    let mut csv = profile.to_csv();
    if profile.partial {
        csv.insert_str(
            0,
            &format!("# partial: {} grid points failed\n", profile.failures.len()),
        );
        for f in &profile.failures {
            eprintln!("error: x = {}: {}", f.x, f.error);
        }
    }
    if let Some(p) = &a.out.csv {
        man.emit(p, csv.as_bytes())?;
    }
    if let Some(p) = &a.out.json {
        man.emit(p, &json_bytes(&summary)?)?;
    }
    if a.out.csv.is_none() && a.out.json.is_none() {
        print!("{csv}");
        println!("# tail max |residual| = {}", fmt_opt(summary.tail_max_abs_residual));
    }
    let code = if profile.partial { EXIT_FAIL } else { EXIT_OK };
    man.finish(g.manifest.as_deref(), code)?;
    Ok(code)
}

#[derive(Serialize)]
struct Probes {
    bands: ProbeBands,
    looks_recurrent: bool,
    looks_transient: bool,
    looks_ergodic: bool,
}

#[derive(Serialize)]
struct SimulateReport<'a> {
    rng: &'a str,
    seed: u64,
    config: &'a SimConfig,
    diagnostics: &'a Diagnostics,
    probes: Probes,
}

pub fn simulate(g: &Global, a: SimulateArgs) -> Result<u8> {
    let mut man = RunManifest::start("simulate", &[&a.symbol])?;
    let (file, triple) = load_symbol(&a.symbol)?;
    let (seed, source) = match g.seed {
        Some(s) => (s, "flag"),
        None => (rand::random::<u64>(), "drawn"),
    };
    man.seed = Some(seed);
    man.seed_source = Some(source);
    man.rng = Some(RNG_ID);
    let cfg = SimConfig {
        m: a.m,
        horizon: a.horizon,
        n_paths: a.paths,
        seed,
        x0: a.x0,
        compact_k: a.compact_k,
        record_stride: a.record_stride,
        max_records: a.max_records,
    };
    #[derive(Serialize)]
    struct Echo<'a> {
        symbol: &'a SymbolFile,
        simulation: &'a SimConfig,
        csv_stride: usize,
    }
    man.config(&Echo {
        symbol: &file,
        simulation: &cfg,
        csv_stride: a.csv_stride,
    })?;
    note(g, || {
        format!(
            "simulating {} paths x {} steps, seed {seed} ({source})",
            cfg.n_paths,
            cfg.steps()
        )
    });
    let ens = simulate_ensemble(&triple, &cfg)?;
    let d = diagnostics(&ens, cfg.compact_k)?;
    let bands = ProbeBands::default();
    let report = SimulateReport {
        rng: RNG_ID,
        seed,
        config: &cfg,
        diagnostics: &d,
        probes: Probes {
            bands,
            looks_recurrent: bands.looks_recurrent(&d),
            looks_transient: bands.looks_transient(&d),
            looks_ergodic: bands.looks_ergodic(&d),
        },
    };
    if let Some(p) = &a.out.csv {
        man.emit(p, ens.to_csv(a.csv_stride).as_bytes())?;
    }
    match &a.out.json {
        Some(p) => man.emit(p, &json_bytes(&report)?)?,
        None => println!(
            "return_fraction={:.4} exit_fraction={:.4} occupation={:.4} (half {:.4}) median|X_T|={:.4e}  seed={seed}",
            d.return_fraction, d.exit_fraction, d.occupation_fraction, d.occupation_half, d.terminal_abs.q50
        ),
    }
    man.finish(g.manifest.as_deref(), EXIT_OK)?;
    Ok(EXIT_OK)
}

pub fn check(g: &Global, a: CheckArgs) -> Result<u8> {
    let mut man = RunManifest::start("check", &[])?;
    let suite: Suite = a.suite.parse()?;
    man.config(&serde_json::json!({ "suite": suite, "inject_fault": a.inject_fault }))?;
    let report = match &a.inject_fault {
        Some(f) => {
            let fault: Fault = f.parse()?;
            run_checks(suite, &FaultyKernel { fault })
        }
        None => run_checks(suite, &ReferenceKernel),
    };
    match &a.json {
        Some(p) => {
            man.emit(p, &json_bytes(&report)?)?;
            if p.as_path() != Path::new("-") {
                print!("{}", report.table());
            }
        }
        None => print!("{}", report.table()),
    }
    note(g, || {
        format!("{} checks, {} failed", report.rows.len(), report.failures().count())
    });
    let code = if report.passed { EXIT_OK } else { EXIT_FAIL };
    man.finish(g.manifest.as_deref(), code)?;
    Ok(code)
}
