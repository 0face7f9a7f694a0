use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod manifest;
mod output;

#[derive(Debug, Parser)]
#[command(
    name = "stablelike",
    version,
    about = "Classify, profile and simulate one-dimensional stable-like processes"
)]
struct Cli {
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Seed for every random draw; drawn and recorded when absent.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Where to write the run manifest.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,

    /// Print progress and per-condition detail to stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide recurrence, transience or ergodicity from the drift conditions.
    Classify(ClassifyArgs),
    /// Scaled generator values of a test function against their limit.
    Drift(DriftArgs),
    /// Monte Carlo ensemble of the approximating Markov chain.
    Simulate(SimulateArgs),
    /// Run the numerical self-check suites.
    Check(CheckArgs),
}

#[derive(Debug, Args)]
struct Outputs {
    /// Write JSON here ("-" for stdout).
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write CSV here ("-" for stdout).
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// Symbol file (TOML with alpha, beta, gamma).
    symbol: PathBuf,
    #[arg(long)]
    x0: Option<f64>,
    #[arg(long)]
    ratio: Option<f64>,
    #[arg(long)]
    count: Option<usize>,
    /// Probe only x > 0.
    #[arg(long)]
    one_sided: bool,
    #[arg(long)]
    margin_tol: Option<f64>,
    #[arg(long)]
    trend_tol: Option<f64>,
    #[arg(long)]
    theta_steps: Option<u32>,
    /// Test f-ergodicity with f(x) = (1+|x|)^eta instead.
    #[arg(long)]
    eta: Option<f64>,
    #[command(flatten)]
    out: Outputs,
}

#[derive(Debug, Args)]
pub struct DriftArgs {
    /// Symbol file (TOML with alpha, beta, gamma).
    symbol: PathBuf,
    /// recurrent, transient or ergodic
    #[arg(long)]
    mode: String,
    /// Test-function exponent (transient and ergodic modes).
    #[arg(long)]
    theta: Option<f64>,
    /// Comma-separated x values, increasing in |x|.
    #[arg(long, value_delimiter = ',')]
    grid: Option<Vec<f64>>,
    #[arg(long, default_value_t = 1e-9)]
    abs_tol: f64,
    #[command(flatten)]
    out: Outputs,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Symbol file (TOML with alpha, beta, gamma).
    symbol: PathBuf,
    /// Steps per unit time.
    #[arg(long, default_value_t = 100)]
    m: u32,
    /// Time horizon.
    #[arg(long = "T", default_value_t = 1000.0)]
    horizon: f64,
    /// Number of independent paths.
    #[arg(long, default_value_t = 400)]
    paths: usize,
    /// Compact set [-K, K] for the return and occupation probes.
    #[arg(long = "K", default_value_t = 10.0)]
    compact_k: f64,
    /// Starting state.
    #[arg(long, default_value_t = 0.0)]
    x0: f64,
    /// Keep every n-th state.
    #[arg(long, default_value_t = 1000)]
    record_stride: usize,
    /// Further thinning of the recorded states in the CSV.
    #[arg(long, default_value_t = 1)]
    csv_stride: usize,
    /// Cap on recorded states over all paths; exceeding it is an error.
    #[arg(long, default_value_t = 20_000_000)]
    max_records: usize,
    #[command(flatten)]
    out: Outputs,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// specfun, generator or all
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long, hide = true)]
    inject_fault: Option<String>,
}

pub struct Global {
    pub seed: Option<u64>,
    pub manifest: Option<PathBuf>,
    pub verbose: u8,
    pub threads: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = Global {
        seed: cli.seed,
        manifest: cli.manifest,
        verbose: cli.verbose,
        threads: cli.threads,
    };
    let run = || match cli.command {
        Command::Classify(a) => commands::classify(&g, a),
        Command::Drift(a) => commands::drift(&g, a),
        Command::Simulate(a) => commands::simulate(&g, a),
        Command::Check(a) => commands::check(&g, a),
    };
    let result = match g.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(anyhow::Error::from)
            .and_then(|pool| pool.install(run)),
        None => run(),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
