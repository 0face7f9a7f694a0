use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const GAMMA_MAX_ARG: f64 = 171.624_376_956_302_7;
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// sin(πx) with exact argument reduction, so integers give exact zeros.
pub fn sin_pi(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    let r = x - 2.0 * (0.5 * x).round(); // r in [-1, 1]
    let (s, r) = if r < 0.0 { (-1.0, -r) } else { (1.0, r) };
    let v = if r <= 0.25 {
        (PI * r).sin()
    } else if r <= 0.75 {
        (PI * (0.5 - r)).cos()
    } else {
        (PI * (1.0 - r)).sin()
    };
    s * v
}

/// cos(πx) with exact argument reduction.
pub fn cos_pi(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    let r = (x - 2.0 * (0.5 * x).round()).abs(); // in [0, 1]
    if r <= 0.25 {
        (PI * r).cos()
    } else if r <= 0.75 {
        (PI * (0.5 - r)).sin()
    } else {
        -(PI * (1.0 - r)).cos()
    }
}

fn lanczos_sum(xm1: f64) -> f64 {
    let mut a = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (xm1 + i as f64);
    }
    a
}

// Γ(x) for x >= 0.5 and below overflow.
fn gamma_pos(x: f64) -> f64 {
    let xm1 = x - 1.0;
    let t = xm1 + LANCZOS_G + 0.5;
    let a = lanczos_sum(xm1);
    let p = t.powf(0.5 * (xm1 + 0.5));
    (2.0 * PI).sqrt() * p * (p * (-t).exp()) * a
}

// ln Γ(x) for x >= 0.5.
fn lgamma_pos(x: f64) -> f64 {
    let xm1 = x - 1.0;
    let t = xm1 + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (xm1 + 0.5) * t.ln() - t + lanczos_sum(xm1).ln()
}

/// The Gamma function.
///
/// Errors at the poles 0, −1, −2, … and when |Γ(x)| exceeds f64 range.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(crate::error::domain("gamma_fn", "NaN argument"));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole { func: "gamma_fn", x });
    }
    if x >= 0.5 {
        if x > GAMMA_MAX_ARG {
            return Err(Error::Overflow { func: "gamma_fn", x });
        }
        return Ok(gamma_pos(x));
    }
    let s = sin_pi(x);
    let y = 1.0 - x;
    if y <= GAMMA_MAX_ARG {
        let v = PI / (s * gamma_pos(y));
        if !v.is_finite() {
            return Err(Error::Overflow { func: "gamma_fn", x });
        }
        Ok(v)
    } else {
        let mag = (PI.ln() - s.abs().ln() - lgamma_pos(y)).exp();
        Ok(mag.copysign(s))
    }
}

/// ln |Γ(x)|.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if is_nonpositive_integer(x) {
        return Err(Error::Pole { func: "ln_gamma", x });
    }
    if x >= 0.5 {
        Ok(lgamma_pos(x))
    } else {
        Ok(PI.ln() - sin_pi(x).abs().ln() - lgamma_pos(1.0 - x))
    }
}

/// 1/Γ(x), entire: zero at the poles of Γ.
pub fn rgamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return 0.0;
    }
    if x > GAMMA_MAX_ARG {
        return (-lgamma_pos(x)).exp();
    }
    if x >= 0.5 {
        return 1.0 / gamma_pos(x);
    }
    let y = 1.0 - x;
    if y <= GAMMA_MAX_ARG {
        sin_pi(x) * gamma_pos(y) / PI
    } else {
        let s = sin_pi(x);
        (s.abs().ln() + lgamma_pos(y) - PI.ln()).exp().copysign(s)
    }
}

/// The digamma function ψ = Γ′/Γ.
///
/// Reflection below 1/2, upward recurrence to x ≥ 10, then the asymptotic
/// Bernoulli expansion.
pub fn digamma(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(crate::error::domain("digamma", "NaN argument"));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole { func: "digamma", x });
    }
    if x < 0.5 {
        // ψ(x) = ψ(1−x) − π cot(πx)
        let cot = cos_pi(x) / sin_pi(x);
        return Ok(digamma_pos(1.0 - x) - PI * cot);
    }
    Ok(digamma_pos(x))
}

fn digamma_pos(mut x: f64) -> f64 {
    let mut shift = 0.0;
    while x < 10.0 {
        shift += 1.0 / x;
        x += 1.0;
    }
    let z = 1.0 / (x * x);
    // B2k/(2k) for k = 1..7
    let series = z
        * (1.0 / 12.0
            - z * (1.0 / 120.0
                - z * (1.0 / 252.0 - z * (1.0 / 240.0 - z * (1.0 / 132.0 - z * (691.0 / 32760.0 - z / 12.0))))));
    x.ln() - 0.5 / x - series - shift
}
