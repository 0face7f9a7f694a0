use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coeffs::{jump_intensity, SymbolTriple};
use crate::error::{Error, Result};
use crate::specfun::{e_const, pi_cot_half, transient_const};

use super::apply::{apply_generator, QuadratureConfig};
use super::testfn::{TestFunction, TestKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DriftMode {
    Recurrent,
    Transient,
    Ergodic,
}

impl DriftMode {
    pub fn name(self) -> &'static str {
        match self {
            DriftMode::Recurrent => "recurrent",
            DriftMode::Transient => "transient",
            DriftMode::Ergodic => "ergodic",
        }
    }
}

impl std::str::FromStr for DriftMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "recurrent" => Ok(DriftMode::Recurrent),
            "transient" => Ok(DriftMode::Transient),
            "ergodic" => Ok(DriftMode::Ergodic),
            _ => Err(Error::Config(format!(
                "unknown mode {s:?}; expected recurrent, transient or ergodic"
            ))),
        }
    }
}

fn drift_term(x: f64, alpha: f64, beta: f64, c: f64, base: f64) -> f64 {
    if beta == 0.0 || x == 0.0 {
        return 0.0;
    }
    x.signum() * alpha / c * base.powf(alpha - 1.0) * beta
}

/// The expression inside the limsup/liminf of the drift condition for
/// `mode`, evaluated at x:
///
/// - recurrent: sgn(x)(α/c)|x|^{α−1}β + π·cot(πα/2)
/// - transient: the same drift term plus the fixed-θ transient constant,
///   or π·cot(πα/2) without θ
/// - ergodic: sgn(x)(α/c)|x|^{α−1}β + (α/(θc))|x|^{α−θ} + E(α, θ)
pub fn asymptotic_rhs(t: &SymbolTriple, x: f64, mode: DriftMode, theta: Option<f64>) -> Result<f64> {
    closed_form(t, x, mode, theta, x.abs())
}

/// Like [`asymptotic_rhs`], but with the drift term in the (1 + |x|) base
/// that the recurrent and transient scalings produce exactly.
pub fn profile_asymptote(t: &SymbolTriple, x: f64, mode: DriftMode, theta: Option<f64>) -> Result<f64> {
    let base = match mode {
        DriftMode::Ergodic => x.abs(),
        _ => 1.0 + x.abs(),
    };
    closed_form(t, x, mode, theta, base)
}

fn closed_form(t: &SymbolTriple, x: f64, mode: DriftMode, theta: Option<f64>, base: f64) -> Result<f64> {
    let s = t.at(x)?;
    let c = jump_intensity(s.alpha, s.gamma)?;
    let drift = drift_term(x, s.alpha, s.beta, c, base);
    Ok(match (mode, theta) {
        (DriftMode::Recurrent, _) | (DriftMode::Transient, None) => drift + pi_cot_half(s.alpha),
        (DriftMode::Transient, Some(th)) => drift + transient_const(s.alpha, th)?,
        (DriftMode::Ergodic, Some(th)) => {
            drift + s.alpha / (th * c) * x.abs().powf(s.alpha - th) + e_const(s.alpha, th)?
        }
        (DriftMode::Ergodic, None) => {
            return Err(Error::Precondition("ergodic mode needs theta".into()));
        }
    })
}

/// Multiplier that turns A V(x) into the profile value (before the ergodic +1 shift).
pub fn profile_scale(alpha: f64, c: f64, x: f64, mode: DriftMode, theta: Option<f64>) -> f64 {
    let th = theta.unwrap_or(1.0);
    match mode {
        DriftMode::Recurrent => alpha / c * (1.0 + x.abs()).powf(alpha),
        DriftMode::Transient => alpha / (th * c) * (1.0 + x.abs()).powf(alpha + th),
        DriftMode::Ergodic => alpha / (th * c) * x.abs().powf(alpha - th),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfilePoint {
    pub x: f64,
    pub scaled_value: f64,
    pub asymptote: f64,
    pub residual: f64,
    pub quad_error_estimate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileFailure {
    pub x: f64,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DriftProfile {
    pub mode: DriftMode,
    pub theta: Option<f64>,
    pub points: Vec<ProfilePoint>,
    pub failures: Vec<ProfileFailure>,
    pub partial: bool,
}

impl DriftProfile {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,scaled_value,asymptote,residual,quad_error_estimate\n");
        for p in &self.points {
            out.push_str(&format!(
                "{:e},{:e},{:e},{:e},{:e}\n",
                p.x, p.scaled_value, p.asymptote, p.residual, p.quad_error_estimate
            ));
        }
        out
    }

    pub fn residuals(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.residual).collect()
    }
}

fn check_mode(v: &TestFunction, mode: DriftMode) -> Result<Option<f64>> {
    match (mode, v.kind()) {
        (DriftMode::Recurrent, TestKind::LogBarrier) => Ok(None),
        (DriftMode::Transient, TestKind::BoundedPower { theta }) => Ok(Some(theta)),
        (DriftMode::Ergodic, TestKind::Power { theta }) => Ok(Some(theta)),
        (m, k) => Err(Error::Precondition(format!(
            "mode {} does not match test function {k:?}",
            m.name()
        ))),
    }
}

/// Scaled generator values along `xs` against the closed-form limit.
///
/// Each point is computed with `abs_tol` divided by its scale factor, so
/// the quadrature error of the scaled value stays below `abs_tol`.
pub fn drift_profile(
    t: &SymbolTriple,
    v: &TestFunction,
    mode: DriftMode,
    xs: &[f64],
    q: &QuadratureConfig,
) -> Result<DriftProfile> {
    let theta = check_mode(v, mode)?;
    q.check()?;
    if xs.is_empty() {
        return Err(Error::Precondition("empty profile grid".into()));
    }
    if xs.windows(2).any(|w| !(w[1].abs() > w[0].abs())) {
        return Err(Error::Precondition(
            "profile grid must be strictly increasing in |x|".into(),
        ));
    }
    let results: Vec<Result<ProfilePoint>> = xs.par_iter().map(|&x| point(t, v, mode, theta, x, q)).collect();
    let mut points = Vec::new();
    let mut failures = Vec::new();
    for (x, r) in xs.iter().zip(results) {
        match r {
            Ok(p) => points.push(p),
            Err(e) => failures.push(ProfileFailure {
                x: *x,
                error: e.to_string(),
            }),
        }
    }
    Ok(DriftProfile {
        mode,
        theta,
        partial: !failures.is_empty(),
        points,
        failures,
    })
}

fn point(
    t: &SymbolTriple,
    v: &TestFunction,
    mode: DriftMode,
    theta: Option<f64>,
    x: f64,
    q: &QuadratureConfig,
) -> Result<ProfilePoint> {
    let s = t.at(x)?;
    let c = jump_intensity(s.alpha, s.gamma)?;
    let scale = profile_scale(s.alpha, c, x, mode, theta);
    let local = q.with_abs_tol(q.abs_tol / scale.max(1.0));
    let terms = apply_generator(t, v, x, &local)?;
    let shifted = match mode {
        DriftMode::Ergodic => terms.value() + 1.0,
        _ => terms.value(),
    };
    let scaled_value = scale * shifted;
    let asymptote = profile_asymptote(t, x, mode, theta)?;
    let residual = scaled_value - asymptote;
    if !residual.is_finite() {
        return Err(Error::Eval {
            x,
            detail: "non-finite profile residual".into(),
        });
    }
    Ok(ProfilePoint {
        x,
        scaled_value,
        asymptote,
        residual,
        quad_error_estimate: scale * terms.error_estimate,
    })
}
