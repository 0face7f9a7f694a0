use serde::{Deserialize, Serialize};

use super::gamma::{cos_pi, gamma_fn, sin_pi};
use super::hyper::{gauss_2f1, gen_binom, series, HypergeomParams};
use crate::error::{domain, Error, Result};
use crate::quad::{integrate, QuadOptions};
use crate::sum::NeumaierSum;

use std::f64::consts::PI;

/// Validated arguments of [`e_const`]: 0 < θ < α < 2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EArgs {
    alpha: f64,
    theta: f64,
}

impl EArgs {
    pub fn new(alpha: f64, theta: f64) -> Result<Self> {
        if !(alpha < 2.0 && 0.0 < theta && theta < alpha) {
            return Err(domain(
                "e_const",
                format!("need 0 < theta < alpha < 2, got alpha = {alpha}, theta = {theta}"),
            ));
        }
        Ok(Self { alpha, theta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

/// π·cot(πα/2). Exactly zero at α = 1.
pub fn pi_cot_half(alpha: f64) -> f64 {
    PI * cos_pi(0.5 * alpha) / sin_pi(0.5 * alpha)
}

/// Partial-fraction series 1/(a−1) + 1/a + Σ_{n≥1} (1−2a)/((a+n)(1−a+n)).
///
/// This sums to π·cot(πa). The remainder beyond N terms is replaced by the
/// integral of g(n) = 1/(a+n) − 1/(1−a+n) over [N+½, ∞), accurate to about
/// |g′(N)|/24.
pub fn partial_fraction_cot(a: f64) -> f64 {
    const N: usize = 20_000;
    let mut s = NeumaierSum::new();
    s.add(1.0 / (a - 1.0));
    s.add(1.0 / a);
    for n in 1..=N {
        let n = n as f64;
        s.add((1.0 - 2.0 * a) / ((a + n) * (1.0 - a + n)));
    }
    let m = N as f64 + 0.5;
    s.add(-((m + a) / (m + 1.0 - a)).ln());
    s.value()
}

/// Independent series evaluation of π·cot(πα/2): the partial-fraction
/// expansion taken at a = α/2. Rejects α = 1 and α outside (0, 2).
pub fn cot_series_check(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 2.0) || alpha == 1.0 {
        return Err(domain(
            "cot_series_check",
            format!("alpha = {alpha} must lie in (0,2) and differ from 1"),
        ));
    }
    Ok(partial_fraction_cot(0.5 * alpha))
}

/// Σ_{i≥1} C(p, 2i)·2/(2i−α) for p ∈ (−1, 2), α ∈ (0, 2).
///
/// Terms decay only like i^{−1−p}, so the sum is evaluated through
/// ∫₀¹ [(1+t)^p + (1−t)^p − 2] t^{−α−1} dt: termwise on [0, ½], where the
/// terms shrink like 4^{−i}, and by an expansion in 1 − t plus quadrature of a
/// smooth remainder on [½, 1].
pub fn binom_even_series(alpha: f64, p: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 2.0 && p > -1.0 && p < 2.0) {
        return Err(domain(
            "binom_even_series",
            format!("need alpha in (0,2), p in (-1,2); got {alpha}, {p}"),
        ));
    }
    if p == 0.0 {
        return Ok(0.0);
    }
    let mut total = NeumaierSum::new();

    // [0, ½]: Σ 2C(p,2i) 2^{α−2i}/(2i−α), |C(p,2i)| ≤ 1.
    let mut i = 1u32;
    loop {
        let k = 2.0 * i as f64;
        total.add(2.0 * gen_binom(p, 2 * i) * 2f64.powf(alpha - k) / (k - alpha));
        let kn = k + 2.0;
        let tail = 2f64.powf(1.0 + alpha - kn) / (kn - alpha) * (4.0 / 3.0);
        if tail < 1e-18 {
            break;
        }
        i += 1;
        if i > 200 {
            return Err(Error::NoConvergence {
                what: "binom_even_series (inner)",
                iterations: i as usize,
                estimate: tail,
            });
        }
    }

    // [½, 1], s = 1 − t: ∫₀^½ s^p (1−s)^{−α−1} ds as a series.
    let mut coef = 1.0; // (α+1)_k / k!
    let mut k = 0usize;
    loop {
        let kf = k as f64;
        let term = coef * 0.5f64.powf(p + kf + 1.0) / (p + kf + 1.0);
        total.add(term);
        let next = kf + 1.0;
        coef *= (alpha + 1.0 + kf) / next;
        if next > alpha + 1.0 {
            let rho = 0.5 * (1.0 + alpha / next);
            let tail = term * rho / (1.0 - rho);
            if tail < 1e-18 {
                break;
            }
        }
        k += 1;
        if k > 500 {
            return Err(Error::NoConvergence {
                what: "binom_even_series (endpoint)",
                iterations: k,
                estimate: term,
            });
        }
    }

    // Smooth remainder ∫₀^½ [(2−s)^p − 2](1−s)^{−α−1} ds.
    let opts = QuadOptions {
        abs_tol: 1e-15,
        rel_tol: 1e-14,
        max_subdivisions: 200,
    };
    let r = integrate(
        |s: f64| ((2.0 - s).powf(p) - 2.0) * (1.0 - s).powf(-alpha - 1.0),
        0.0,
        0.5,
        &opts,
    )?;
    total.add(r.value);
    Ok(total.value())
}

/// The ergodicity constant E(α, θ):
/// (α/θ)·Σ C(θ,2i)·2/(2i−α) − 2/θ
///   + α[₂F₁(−θ, α−θ; 1+α−θ; −1) + ₂F₁(−θ, α−θ; 1+α−θ; 1)] / (θ(α−θ)).
pub fn e_const(alpha: f64, theta: f64) -> Result<f64> {
    let args = EArgs::new(alpha, theta)?;
    e_const_args(args)
}

pub fn e_const_args(args: EArgs) -> Result<f64> {
    let (alpha, theta) = (args.alpha, args.theta);
    let s = binom_even_series(alpha, theta)?;
    let (a, b, c) = (-theta, alpha - theta, 1.0 + alpha - theta);
    let f_minus = gauss_2f1(HypergeomParams::new(a, b, c, -1.0))?;
    let f_plus = gauss_2f1(HypergeomParams::new(a, b, c, 1.0))?;
    Ok(alpha / theta * s - 2.0 / theta + alpha * (f_minus + f_plus) / (theta * (alpha - theta)))
}

/// The fixed-θ transient limit
/// −(α/θ)·Σ C(−θ,2i)·2/(2i−α) + 2/θ
///   − α[₂F₁(θ, α+θ; 1+α+θ; −1) + ₂F₁(θ, α+θ; 1+α+θ; 1)] / (θ(α+θ)),
/// for α ∈ (0, 2), θ ∈ (0, 1). Tends to π·cot(πα/2) as θ ↓ 0.
pub fn transient_const(alpha: f64, theta: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 2.0 && theta > 0.0 && theta < 1.0) {
        return Err(domain(
            "transient_const",
            format!("need alpha in (0,2), theta in (0,1); got {alpha}, {theta}"),
        ));
    }
    let s = binom_even_series(alpha, -theta)?;
    let (a, b, c) = (theta, alpha + theta, 1.0 + alpha + theta);
    // z = −1 through the Pfaff map; z = 1 by Gauss summation.
    let f_minus = 2f64.powf(-theta) * series(a, c - b, c, 0.5)?;
    let f_plus = gamma_fn(c)? * gamma_fn(c - a - b)? / (gamma_fn(c - a)? * gamma_fn(c - b)?);
    Ok(-alpha / theta * s + 2.0 / theta - alpha * (f_minus + f_plus) / (theta * (alpha + theta)))
}
