use serde::{Deserialize, Serialize};

use super::gamma::{gamma_fn, rgamma};
use crate::error::{domain, Error, Result};
use crate::quad::{integrate, QuadOptions};
use crate::sum::NeumaierSum;

/// Arguments of ₂F₁(a, b; c; z) on the real line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HypergeomParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub z: f64,
}

impl HypergeomParams {
    pub fn new(a: f64, b: f64, c: f64, z: f64) -> Self {
        Self { a, b, c, z }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Hyp2f1Method {
    Series,
    GaussSum,
    Pfaff,
    EulerIntegral,
    Connection,
}

/// A ₂F₁ value together with how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Hyp2f1Eval {
    pub value: f64,
    pub method: Hyp2f1Method,
    /// Set when `b` was shifted to escape the integer `b − a` degeneracy of
    /// the connection formula. The value is then extrapolated from symmetric
    /// shifts ±h and ±h/2, with h the recorded shift.
    pub perturbation: Option<f64>,
}

const SERIES_MAX_TERMS: usize = 20_000;
const CONNECTION_SHIFT: f64 = 1e-3;

/// Generalized binomial coefficient θ(θ−1)…(θ−k+1)/k!.
pub fn gen_binom(theta: f64, k: u32) -> f64 {
    let mut c = 1.0;
    for j in 0..k {
        c *= (theta - j as f64) / (j as f64 + 1.0);
    }
    c
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

fn is_integer(x: f64) -> bool {
    x == x.round()
}

/// Gauss hypergeometric function ₂F₁(a, b; c; z) for real z ≤ 1.
pub fn gauss_2f1(p: HypergeomParams) -> Result<f64> {
    gauss_2f1_eval(p).map(|e| e.value)
}

/// Like [`gauss_2f1`], reporting the evaluation route.
pub fn gauss_2f1_eval(p: HypergeomParams) -> Result<Hyp2f1Eval> {
    let HypergeomParams { a, b, c, z } = p;
    if !(a.is_finite() && b.is_finite() && c.is_finite() && z.is_finite()) {
        return Err(domain("gauss_2f1", "non-finite parameter"));
    }
    if is_nonpositive_integer(c) {
        return Err(domain("gauss_2f1", format!("c = {c} is a non-positive integer")));
    }
    let plain = |value, method| Hyp2f1Eval {
        value,
        method,
        perturbation: None,
    };
    if z > 1.0 {
        return Err(domain("gauss_2f1", format!("z = {z} > 1 is on the branch cut")));
    }
    if z.abs() <= 0.5 {
        return Ok(plain(series(a, b, c, z)?, Hyp2f1Method::Series));
    }
    if z == 1.0 {
        return Ok(plain(gauss_sum(a, b, c)?, Hyp2f1Method::GaussSum));
    }
    if z > 0.5 {
        return Ok(plain(euler_integral(a, b, c, z)?, Hyp2f1Method::EulerIntegral));
    }
    if z >= -1.0 {
        if z == -1.0 && c - a - b <= -1.0 {
            return Err(domain(
                "gauss_2f1",
                format!("series diverges at z = -1 with c-a-b = {}", c - a - b),
            ));
        }
        return Ok(plain(pfaff(a, b, c, z)?, Hyp2f1Method::Pfaff));
    }
    connection(a, b, c, z)
}

/// Direct power series with an explicit geometric tail bound. Requires |z| < 1.
pub fn series(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if z.abs() >= 1.0 {
        return Err(domain("gauss_2f1 series", format!("|z| = {} >= 1", z.abs())));
    }
    let mut sum = NeumaierSum::new();
    let mut term = 1.0;
    sum.add(term);
    let neg_c = (-c).max(0.0);
    for n in 0..SERIES_MAX_TERMS {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        sum.add(term);
        if term == 0.0 {
            return Ok(sum.value());
        }
        // For every m > n the term ratio is bounded by rho.
        let m = nf + 1.0;
        if m > 2.0 * neg_c {
            let rho = z.abs() * (1.0 + a.abs() / m) * (1.0 + b.abs() / m) / (1.0 - neg_c / m);
            if rho < 1.0 {
                let tail = term.abs() * rho / (1.0 - rho);
                if tail <= 1e-17 * sum.value().abs() || tail < 1e-300 {
                    return Ok(sum.value());
                }
            }
        }
    }
    Err(Error::NoConvergence {
        what: "gauss_2f1 series",
        iterations: SERIES_MAX_TERMS,
        estimate: term.abs(),
    })
}

/// Gauss summation at z = 1, valid when c − a − b > 0.
fn gauss_sum(a: f64, b: f64, c: f64) -> Result<f64> {
    let s = c - a - b;
    if s <= 0.0 {
        return Err(domain("gauss_2f1", format!("divergent at z = 1: c-a-b = {s} <= 0")));
    }
    Ok(gamma_fn(c)? * gamma_fn(s)? * rgamma(c - a) * rgamma(c - b))
}

/// Pfaff transformation z ↦ z/(z−1), used for −1 ≤ z < −1/2.
fn pfaff(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    let w = z / (z - 1.0);
    Ok((1.0 - z).powf(-a) * series(a, c - b, c, w)?)
}

/// Euler integral representation, requiring c > b > 0 (or the same with a
/// and b exchanged). Valid for any real z < 1.
pub fn euler_integral(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    let (a, b) = if c > b && b > 0.0 {
        (a, b)
    } else if c > a && a > 0.0 {
        (b, a)
    } else {
        return Err(domain(
            "gauss_2f1",
            format!("no evaluation route for (a,b,c,z) = ({a},{b},{c},{z})"),
        ));
    };
    if z >= 1.0 {
        return Err(domain("gauss_2f1 euler", "z >= 1"));
    }
    let d = c - b;
    let opts = QuadOptions {
        abs_tol: 1e-300,
        rel_tol: 1e-13,
        max_subdivisions: 4000,
    };
    // [0, 1/2] with t = u^{1/b}; [1/2, 1] with 1 − t = v^{1/d}.
    let left = integrate(
        |u: f64| {
            let t = u.powf(1.0 / b);
            (1.0 - t).powf(d - 1.0) * (1.0 - t * z).powf(-a) / b
        },
        0.0,
        0.5f64.powf(b),
        &opts,
    )?;
    let right = integrate(
        |v: f64| {
            let s = v.powf(1.0 / d);
            let t = 1.0 - s;
            t.powf(b - 1.0) * (1.0 - z + s * z).powf(-a) / d
        },
        0.0,
        0.5f64.powf(d),
        &opts,
    )?;
    Ok(gamma_fn(c)? * rgamma(b) * rgamma(d) * (left.value + right.value))
}

fn connection_raw(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    let w = 1.0 / z;
    let mz = -z;
    let t1 = gamma_fn(c)?
        * gamma_fn(b - a)?
        * rgamma(b)
        * rgamma(c - a)
        * mz.powf(-a)
        * gauss_2f1(HypergeomParams::new(a, 1.0 - c + a, 1.0 - b + a, w))?;
    let t2 = gamma_fn(c)?
        * gamma_fn(a - b)?
        * rgamma(a)
        * rgamma(c - b)
        * mz.powf(-b)
        * gauss_2f1(HypergeomParams::new(b, 1.0 - c + b, 1.0 - a + b, w))?;
    Ok(t1 + t2)
}

/// Connection formula mapping z ↦ 1/z for z < −1.
///
/// When b − a is an integer the formula degenerates; the Euler integral is
/// used instead if it applies, otherwise `b` is shifted symmetrically and the
/// result Richardson-extrapolated in the shift.
fn connection(a: f64, b: f64, c: f64, z: f64) -> Result<Hyp2f1Eval> {
    if !is_integer(b - a) {
        return Ok(Hyp2f1Eval {
            value: connection_raw(a, b, c, z)?,
            method: Hyp2f1Method::Connection,
            perturbation: None,
        });
    }
    if (c > b && b > 0.0) || (c > a && a > 0.0) {
        return Ok(Hyp2f1Eval {
            value: euler_integral(a, b, c, z)?,
            method: Hyp2f1Method::EulerIntegral,
            perturbation: None,
        });
    }
    let h = CONNECTION_SHIFT;
    let sym = |h: f64| -> Result<f64> { Ok(0.5 * (connection_raw(a, b + h, c, z)? + connection_raw(a, b - h, c, z)?)) };
    let coarse = sym(h)?;
    let fine = sym(0.5 * h)?;
    Ok(Hyp2f1Eval {
        value: (4.0 * fine - coarse) / 3.0,
        method: Hyp2f1Method::Connection,
        perturbation: Some(h),
    })
}

/// Right-hand side of the z ↦ 1/z connection formula, evaluated as written.
pub fn connection_rhs(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if z >= 0.0 {
        return Err(domain("connection_rhs", "needs z < 0"));
    }
    connection_raw(a, b, c, z)
}
