use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coeffs::SymbolTriple;
use crate::error::{Error, Result};

use super::chain::step_chain;
use super::sampler::{path_rng, RNG_ID};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimConfig {
    pub m: u32,
    pub horizon: f64,
    pub n_paths: usize,
    pub seed: u64,
    pub x0: f64,
    pub compact_k: f64,
    /// Record every `record_stride`-th state (step 0 included).
    pub record_stride: usize,
    /// Upper bound on recorded states across all paths.
    pub max_records: usize,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            m: 100,
            horizon: 1000.0,
            n_paths: 400,
            seed: 0,
            x0: 0.0,
            compact_k: 10.0,
            record_stride: 1000,
            max_records: 20_000_000,
        }
    }
}

impl SimConfig {
    pub fn check(&self) -> Result<()> {
        if self.m < 1 {
            return Err(Error::Precondition("m must be at least 1".into()));
        }
        if !(self.horizon > 0.0 && self.horizon.is_finite()) {
            return Err(Error::Precondition(format!(
                "horizon must be positive, got {}",
                self.horizon
            )));
        }
        if self.n_paths < 1 {
            return Err(Error::Precondition("n_paths must be at least 1".into()));
        }
        if !(self.compact_k > 0.0 && self.compact_k.is_finite()) {
            return Err(Error::Precondition(format!(
                "compact_k must be positive, got {}",
                self.compact_k
            )));
        }
        if !self.x0.is_finite() {
            return Err(Error::Precondition("x0 must be finite".into()));
        }
        if self.record_stride < 1 {
            return Err(Error::Precondition("record_stride must be at least 1".into()));
        }
        Ok(())
    }

    /// ⌈mT⌉
    pub fn steps(&self) -> u64 {
        (self.m as f64 * self.horizon).ceil() as u64
    }

    pub fn records_per_path(&self) -> u64 {
        self.steps() / self.record_stride as u64 + 1
    }
}

/// Exact per-path statistics for the probe set [−K, K], K = compact_k.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathStats {
    /// Time of the first exit from [−2K, 2K].
    pub first_exit: Option<f64>,
    /// Time of the first entry into [−K, K] after that exit.
    pub first_return: Option<f64>,
    /// Steps 1..=n with the state in [−K, K].
    pub occupied_steps: u64,
    /// The same count over steps 1..=⌈n/2⌉.
    pub occupied_steps_half: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathEnsemble {
    pub config: SimConfig,
    pub rng: String,
    pub streams: Vec<u64>,
    /// Times of the recorded states, shared by all paths.
    pub times: Vec<f64>,
    pub records: Vec<Vec<f64>>,
    pub terminal: Vec<f64>,
    pub stats: Vec<PathStats>,
}

impl PathEnsemble {
    pub fn steps(&self) -> u64 {
        self.config.steps()
    }

    /// CSV with columns path_id, step, time, state, thinned to every
    /// `stride`-th recorded state.
    pub fn to_csv(&self, stride: usize) -> String {
        let stride = stride.max(1);
        let mut out = String::from("path_id,step,time,state\n");
        let rs = self.config.record_stride as u64;
        for (p, rec) in self.records.iter().enumerate() {
            for (i, x) in rec.iter().enumerate().step_by(stride) {
                out.push_str(&format!("{p},{},{:e},{:e}\n", i as u64 * rs, self.times[i], x));
            }
        }
        out
    }
}

struct PathRun {
    records: Vec<f64>,
    terminal: f64,
    stats: PathStats,
}

fn run_path(t: &SymbolTriple, cfg: &SimConfig, path: usize) -> Result<PathRun> {
    let mut rng = path_rng(cfg.seed, path as u64);
    let n = cfg.steps();
    let half = n.div_ceil(2);
    let (k, k2) = (cfg.compact_k, 2.0 * cfg.compact_k);
    let dt = 1.0 / cfg.m as f64;
    let mut records = Vec::with_capacity(cfg.records_per_path() as usize);
    let mut x = cfg.x0;
    records.push(x);
    let mut stats = PathStats {
        first_exit: None,
        first_return: None,
        occupied_steps: 0,
        occupied_steps_half: 0,
    };
    for step in 1..=n {
        x = step_chain(t, x, cfg.m, &mut rng)?;
        if !x.is_finite() {
            return Err(Error::Eval {
                x,
                detail: format!("path {path} left the reals at step {step}"),
            });
        }
        let a = x.abs();
        let time = step as f64 * dt;
        if a <= k {
            stats.occupied_steps += 1;
            if step <= half {
                stats.occupied_steps_half += 1;
            }
            if stats.first_exit.is_some() && stats.first_return.is_none() {
                stats.first_return = Some(time);
            }
        } else if a > k2 && stats.first_exit.is_none() {
            stats.first_exit = Some(time);
        }
        if step % cfg.record_stride as u64 == 0 {
            records.push(x);
        }
    }
    Ok(PathRun {
        records,
        terminal: x,
        stats,
    })
}

/// Runs `n_paths` independent chains of ⌈mT⌉ steps from x0. Path i draws
/// from stream i of the seeded generator, so the result does not depend
/// on the thread schedule.
pub fn simulate_ensemble(t: &SymbolTriple, cfg: &SimConfig) -> Result<PathEnsemble> {
    cfg.check()?;
    let requested = cfg.records_per_path().saturating_mul(cfg.n_paths as u64);
    if requested > cfg.max_records as u64 {
        return Err(Error::ResourceLimit {
            requested,
            cap: cfg.max_records as u64,
        });
    }
    let runs: Vec<Result<PathRun>> = (0..cfg.n_paths).into_par_iter().map(|p| run_path(t, cfg, p)).collect();
    let mut records = Vec::with_capacity(cfg.n_paths);
    let mut terminal = Vec::with_capacity(cfg.n_paths);
    let mut stats = Vec::with_capacity(cfg.n_paths);
    for r in runs {
        let r = r?;
        records.push(r.records);
        terminal.push(r.terminal);
        stats.push(r.stats);
    }
    let dt = 1.0 / cfg.m as f64;
    let times = (0..cfg.records_per_path())
        .map(|i| (i * cfg.record_stride as u64) as f64 * dt)
        .collect();
    Ok(PathEnsemble {
        config: *cfg,
        rng: RNG_ID.to_string(),
        streams: (0..cfg.n_paths as u64).collect(),
        times,
        records,
        terminal,
        stats,
    })
}
