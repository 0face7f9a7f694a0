use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sum::NeumaierSum;

use super::ensemble::PathEnsemble;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quantiles {
    pub q50: f64,
    pub q90: f64,
    pub q99: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub k: f64,
    pub horizon: f64,
    pub n_paths: usize,
    /// False when K differs from the simulated probe radius and the
    /// statistics come from the recorded (strided) states.
    pub full_resolution: bool,
    /// Paths that leave [−2K, 2K] and later re-enter [−K, K].
    pub return_fraction: f64,
    pub return_se: f64,
    pub exit_fraction: f64,
    /// Mean over paths of the time fraction spent in [−K, K].
    pub occupation_fraction: f64,
    pub occupation_se: f64,
    /// The same over the first half of the horizon.
    pub occupation_half: f64,
    /// |occupation_fraction − occupation_half|
    pub occupation_drift: f64,
    pub terminal_abs: Quantiles,
}

/// Desk-scale bands for the Monte Carlo probes. They are conventions for a
/// finite budget, not limits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ProbeBands {
    pub recurrent_return_min: f64,
    pub transient_return_max: f64,
    pub transient_median_min: f64,
    pub ergodic_occupation_min: f64,
    pub ergodic_drift_max: f64,
}

impl Default for ProbeBands {
    fn default() -> Self {
        Self {
            recurrent_return_min: 0.9,
            transient_return_max: 0.5,
            transient_median_min: 100.0,
            ergodic_occupation_min: 0.8,
            ergodic_drift_max: 0.05,
        }
    }
}

impl ProbeBands {
    pub fn looks_recurrent(&self, d: &Diagnostics) -> bool {
        d.return_fraction >= self.recurrent_return_min
    }

    pub fn looks_transient(&self, d: &Diagnostics) -> bool {
        d.return_fraction <= self.transient_return_max && d.terminal_abs.q50 > self.transient_median_min
    }

    pub fn looks_ergodic(&self, d: &Diagnostics) -> bool {
        d.occupation_fraction >= self.ergodic_occupation_min && d.occupation_drift <= self.ergodic_drift_max
    }
}

/// Linear-interpolation quantile of sorted data.
pub fn quantile(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let h = (n - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(n - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

fn mean_se(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().copied().collect::<NeumaierSum>().value() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values
        .iter()
        .map(|v| (v - mean) * (v - mean))
        .collect::<NeumaierSum>()
        .value()
        / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Return, occupation and terminal-spread probes for the set [−K, K].
pub fn diagnostics(e: &PathEnsemble, k: f64) -> Result<Diagnostics> {
    if e.terminal.is_empty() {
        return Err(Error::Precondition("empty ensemble".into()));
    }
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::Precondition(format!("K must be positive, got {k}")));
    }
    let n = e.steps() as f64;
    let half = e.steps().div_ceil(2) as f64;
    let full = k == e.config.compact_k;
    let (exits, returns, occ, occ_half): (Vec<f64>, Vec<f64>, Vec<f64>, Vec<f64>) = if full {
        let ind = |b: bool| if b { 1.0 } else { 0.0 };
        (
            e.stats.iter().map(|s| ind(s.first_exit.is_some())).collect(),
            e.stats.iter().map(|s| ind(s.first_return.is_some())).collect(),
            e.stats.iter().map(|s| s.occupied_steps as f64 / n).collect(),
            e.stats.iter().map(|s| s.occupied_steps_half as f64 / half).collect(),
        )
    } else {
        let mut v = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        for rec in &e.records {
            let states = &rec[1..];
            let m = states.len().max(1) as f64;
            let h = states.len().div_ceil(2);
            let mut exited = false;
            let mut returned = false;
            for x in states {
                if x.abs() > 2.0 * k {
                    exited = true;
                } else if exited && x.abs() <= k {
                    returned = true;
                    break;
                }
            }
            let inside = |s: &[f64]| s.iter().filter(|x| x.abs() <= k).count() as f64;
            v.0.push(if exited { 1.0 } else { 0.0 });
            v.1.push(if returned { 1.0 } else { 0.0 });
            v.2.push(inside(states) / m);
            v.3.push(inside(&states[..h]) / h.max(1) as f64);
        }
        v
    };
    let (exit_fraction, _) = mean_se(&exits);
    let (return_fraction, return_se) = mean_se(&returns);
    let (occupation_fraction, occupation_se) = mean_se(&occ);
    let (occupation_half, _) = mean_se(&occ_half);
    let mut abs: Vec<f64> = e.terminal.iter().map(|x| x.abs()).collect();
    abs.sort_by(f64::total_cmp);
    Ok(Diagnostics {
        k,
        horizon: e.config.horizon,
        n_paths: e.terminal.len(),
        full_resolution: full,
        return_fraction,
        return_se,
        exit_fraction,
        occupation_fraction,
        occupation_se,
        occupation_half,
        occupation_drift: (occupation_fraction - occupation_half).abs(),
        terminal_abs: Quantiles {
            q50: quantile(&abs, 0.5),
            q90: quantile(&abs, 0.9),
            q99: quantile(&abs, 0.99),
        },
    })
}
