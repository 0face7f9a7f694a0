use crate::coeffs::{jump_intensity, SymbolTriple};
use crate::error::{domain, Error, Result};
use crate::specfun::{e_const, pi_cot_half};

use super::grid::{estimate_liminf, estimate_limsup, Estimate, GridSpec};
use super::verdict::*;

/// Pointwise value of a condition expression:
///
/// - recurrence, transience: sgn(x)(α/c)|x|^{α−1}β + π·cot(πα/2)
/// - ergodicity: the drift term + (α/(θc))|x|^{α−θ} + E(α, θ)
/// - fixed-θ recurrence: the drift term + E(α, θ)
/// - f-ergodicity: the drift term + (α/(θc))|x|^{α−θ+η} + E(α, θ)
pub fn condition_value(t: &SymbolTriple, x: f64, id: ConditionId, theta: Option<f64>, eta: Option<f64>) -> Result<f64> {
    let s = t.at(x)?;
    let c = jump_intensity(s.alpha, s.gamma)?;
    let drift = if s.beta == 0.0 || x == 0.0 {
        0.0
    } else {
        x.signum() * s.alpha / c * x.abs().powf(s.alpha - 1.0) * s.beta
    };
    let need_theta = || theta.ok_or_else(|| Error::Precondition(format!("condition {id} needs theta")));
    Ok(match id {
        ConditionId::Recurrence | ConditionId::Transience => drift + pi_cot_half(s.alpha),
        ConditionId::Ergodicity => {
            let th = need_theta()?;
            drift + s.alpha / (th * c) * x.abs().powf(s.alpha - th) + e_const(s.alpha, th)?
        }
        ConditionId::RecurrenceFixedTheta => drift + e_const(s.alpha, need_theta()?)?,
        ConditionId::FErgodicity => {
            let th = need_theta()?;
            let eta = eta.ok_or_else(|| Error::Precondition("condition 2.2 needs eta".into()))?;
            drift + s.alpha / (th * c) * x.abs().powf(s.alpha - th + eta) + e_const(s.alpha, th)?
        }
    })
}

/// The ergodic θ-grid θ_j = α_inf(1 − 2^{−j}), j = 1..=steps.
pub fn theta_grid(alpha_inf: f64, steps: u32) -> Vec<f64> {
    (1..=steps).map(|j| alpha_inf * (1.0 - 0.5f64.powi(j as i32))).collect()
}

/// θ used by the fixed-θ recurrence route: an eighth of the grid liminf of α.
pub fn fixed_theta(alpha_liminf: f64) -> f64 {
    alpha_liminf / 8.0
}

// A tail below −tol whose trend does not point back up certifies a limsup < 0.
fn certifies_below(e: &Estimate, cfg: &ClassifierConfig) -> bool {
    e.value <= -cfg.margin_tol && e.trend <= cfg.trend_tol
}

fn certifies_above(e: &Estimate, cfg: &ClassifierConfig) -> bool {
    e.value >= cfg.margin_tol && e.trend >= -cfg.trend_tol
}

fn record(id: ConditionId, theta: Option<f64>, e: Estimate, certified: bool) -> ConditionRecord {
    ConditionRecord {
        id,
        theta,
        value: e.value,
        trend: e.trend,
        certified,
        grid: e.points,
    }
}

struct AlphaTails {
    liminf: f64,
    asymmetric: bool,
}

fn alpha_tails(t: &SymbolTriple, g: &GridSpec) -> Result<AlphaTails> {
    let e = estimate_liminf(|x| t.alpha(x), g)?;
    let asymmetric = e.sides.len() == 2 && {
        let (p, m) = (&e.sides[0], &e.sides[1]);
        (p.min - m.min).abs() > 1e-3 || (p.max - m.max).abs() > 1e-3
    };
    Ok(AlphaTails {
        liminf: e.value,
        asymmetric,
    })
}

fn sides_disagree(e: &Estimate, below: bool, tol: f64) -> bool {
    if e.sides.len() < 2 {
        return false;
    }
    let ok = |s: &super::grid::SideTail| if below { s.max <= -tol } else { s.min >= tol };
    ok(&e.sides[0]) != ok(&e.sides[1])
}

/// Classifies a symbol by the sufficient drift conditions, in order:
/// transience; recurrence under liminf α ≥ 1, else the fixed-θ route; then
/// ergodicity on the θ-grid when inf α > 1.
pub fn classify(t: &SymbolTriple, cfg: &ClassifierConfig) -> Result<Verdict> {
    check_config(cfg)?;
    let g = &cfg.grid;
    let mut caveats = Vec::new();
    let mut conditions = Vec::new();
    let tails = alpha_tails(t, g)?;
    if tails.asymmetric {
        caveats.push(Caveat::AsymmetricTails);
    }

    let cot = |x: f64| condition_value(t, x, ConditionId::Recurrence, None, None);
    let low = estimate_liminf(cot, g)?;
    let high = estimate_limsup(cot, g)?;

    let transient = certifies_above(&low, cfg);
    let gate = tails.liminf >= 1.0 - cfg.alpha_gate_tol;
    let recurrent = gate && certifies_below(&high, cfg);
    let (low_value, high_value) = (low.value, high.value);
    let (low_stable, high_stable) = (low.trend >= -cfg.trend_tol, high.trend <= cfg.trend_tol);
    let disagree = sides_disagree(&low, false, cfg.margin_tol) || sides_disagree(&high, true, cfg.margin_tol);
    conditions.push(record(ConditionId::Transience, None, low, transient));
    conditions.push(record(ConditionId::Recurrence, None, high, recurrent));

    let theta15 = fixed_theta(tails.liminf.max(0.0));
    let route15 = if theta15 > 0.0 {
        let e = estimate_limsup(
            |x| condition_value(t, x, ConditionId::RecurrenceFixedTheta, Some(theta15), None),
            g,
        );
        match e {
            Ok(e) => {
                let ok = certifies_below(&e, cfg);
                conditions.push(record(ConditionId::RecurrenceFixedTheta, Some(theta15), e, ok));
                ok
            }
            Err(_) => false,
        }
    } else {
        false
    };

    let mut verdict = Verdict {
        label: Label::Inconclusive,
        margin: 0.0,
        fired: None,
        conditions,
        theta_trace: None,
        eta: None,
        caveats: Vec::new(),
        config_echo: *cfg,
        versions: Versions::default(),
    };

    if transient {
        verdict.label = Label::Transient;
        verdict.margin = low_value;
        verdict.fired = Some(ConditionId::Transience);
    } else if recurrent || route15 {
        verdict.label = Label::Recurrent;
        if recurrent {
            verdict.margin = -high_value;
            verdict.fired = Some(ConditionId::Recurrence);
        } else {
            let r = verdict
                .condition(ConditionId::RecurrenceFixedTheta)
                .map(|r| r.value)
                .unwrap_or(0.0);
            verdict.margin = -r;
            verdict.fired = Some(ConditionId::RecurrenceFixedTheta);
        }
        let alpha_inf = t.bounds().alpha_inf;
        if recurrent && alpha_inf > 1.0 {
            let thetas = theta_grid(alpha_inf, cfg.theta_steps);
            let (trace, ergodic, margin, recs, cav) = theta_scan(t, cfg, &thetas, ConditionId::Ergodicity, None);
            verdict.conditions.extend(recs);
            caveats.extend(cav);
            verdict.theta_trace = Some(trace);
            if ergodic {
                verdict.label = Label::Ergodic;
                verdict.margin = margin;
                verdict.fired = Some(ConditionId::Ergodicity);
            }
        }
    } else {
        if !gate {
            caveats.push(Caveat::AlphaBelowOne);
        }
        if disagree {
            caveats.push(Caveat::SidesDisagree);
        }
        if low_value.abs() < cfg.margin_tol || high_value.abs() < cfg.margin_tol {
            caveats.push(Caveat::MarginTooSmall);
        }
        if (low_value >= cfg.margin_tol && !low_stable) || (high_value <= -cfg.margin_tol && !high_stable) {
            caveats.push(Caveat::NonStabilizing);
        }
        // Signed distance to certification of the closer side.
        verdict.margin = low_value.max(-high_value);
    }
    caveats.sort();
    caveats.dedup();
    verdict.caveats = caveats;
    Ok(verdict)
}

type Scan = (Vec<ThetaEntry>, bool, f64, Vec<ConditionRecord>, Vec<Caveat>);

// Evaluates a θ-family condition; certified when its two largest θ are.
fn theta_scan(t: &SymbolTriple, cfg: &ClassifierConfig, thetas: &[f64], id: ConditionId, eta: Option<f64>) -> Scan {
    let mut trace = Vec::new();
    let mut recs = Vec::new();
    let mut caveats = Vec::new();
    for &th in thetas {
        match estimate_limsup(|x| condition_value(t, x, id, Some(th), eta), &cfg.grid) {
            Ok(e) => {
                let ok = certifies_below(&e, cfg);
                trace.push(ThetaEntry {
                    theta: th,
                    value: Some(e.value),
                    trend: Some(e.trend),
                    certified: ok,
                    error: None,
                });
                recs.push(record(id, Some(th), e, ok));
            }
            Err(err) => {
                caveats.push(Caveat::ThetaOutOfRange);
                trace.push(ThetaEntry {
                    theta: th,
                    value: None,
                    trend: None,
                    certified: false,
                    error: Some(err.to_string()),
                });
            }
        }
    }
    let top: Vec<&ThetaEntry> = trace.iter().rev().take(2).collect();
    let ok = top.len() == 2 && top.iter().all(|e| e.certified);
    let margin = if ok {
        -top.iter().filter_map(|e| e.value).fold(f64::NEG_INFINITY, f64::max)
    } else {
        if trace.iter().any(|e| e.certified) {
            caveats.push(Caveat::ThetaTraceInconsistent);
        }
        0.0
    };
    (trace, ok, margin, recs, caveats)
}

fn check_config(cfg: &ClassifierConfig) -> Result<()> {
    cfg.grid.check()?;
    if !(cfg.margin_tol > 0.0 && cfg.trend_tol > 0.0 && cfg.alpha_gate_tol >= 0.0) {
        return Err(Error::Precondition("classifier tolerances must be positive".into()));
    }
    if cfg.theta_steps < 2 {
        return Err(Error::Precondition("theta_steps must be at least 2".into()));
    }
    Ok(())
}

/// f-ergodicity for f(x) = |x|^η: the ergodic θ-grid restricted to θ > 1 and
/// θ ≥ η, with the power term raised to |x|^{α−θ+η}.
pub fn classify_f_ergodic(t: &SymbolTriple, eta: f64, cfg: &ClassifierConfig) -> Result<Verdict> {
    check_config(cfg)?;
    let alpha_inf = t.bounds().alpha_inf;
    if !(eta > 0.0) {
        return Err(Error::Precondition(format!("eta must be positive, got {eta}")));
    }
    if eta >= alpha_inf {
        return Err(Error::Precondition(format!(
            "eta {eta} must be below inf alpha {alpha_inf}"
        )));
    }
    if alpha_inf <= 1.0 {
        return Err(Error::Precondition(format!(
            "f-ergodicity needs inf alpha > 1, got {alpha_inf}"
        )));
    }
    let lo = eta.max(1.0);
    let thetas: Vec<f64> = theta_grid(alpha_inf, cfg.theta_steps)
        .into_iter()
        .filter(|&th| th > lo || (th == lo && lo > 1.0))
        .collect();
    let (trace, ok, margin, recs, mut caveats) = theta_scan(t, cfg, &thetas, ConditionId::FErgodicity, Some(eta));
    if !ok && caveats.is_empty() {
        caveats.push(Caveat::MarginTooSmall);
    }
    caveats.sort();
    caveats.dedup();
    let best = trace
        .iter()
        .rev()
        .take(2)
        .filter_map(|e| e.value)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(Verdict {
        label: if ok { Label::FErgodic } else { Label::Inconclusive },
        margin: if ok {
            margin
        } else if best.is_finite() {
            -best
        } else {
            0.0
        },
        fired: ok.then_some(ConditionId::FErgodicity),
        conditions: recs,
        theta_trace: Some(trace),
        eta: Some(eta),
        caveats,
        config_echo: *cfg,
        versions: Versions::default(),
    })
}

/// Constant symmetric symbols: recurrent iff α > 1.
pub fn constant_index_label(alpha: f64, gamma: f64) -> Result<Label> {
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(domain("constant_index_label", format!("alpha {alpha} not in (0,2)")));
    }
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(domain(
            "constant_index_label",
            format!("gamma {gamma} must be positive"),
        ));
    }
    if alpha == 1.0 {
        return Err(domain(
            "constant_index_label",
            "alpha = 1 is not decided by the drift conditions",
        ));
    }
    Ok(if alpha > 1.0 {
        Label::Recurrent
    } else {
        Label::Transient
    })
}
