use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogSeriesCheck {
    pub x: f64,
    /// (1/x) Σ_{n≥1} (1/n)(x/(1+x))^n, summed termwise.
    pub series: f64,
    /// ln(1+x)/x
    pub closed_form: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShiftRatioCheck {
    pub alpha: f64,
    pub shift: f64,
    pub x: f64,
    /// (1/(1−α))(1 − (x/(x+R))^{1−α})
    pub value: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub log_series: Vec<LogSeriesCheck>,
    pub shift_ratio: Vec<ShiftRatioCheck>,
    pub passed: bool,
}

fn log_series(x: f64) -> f64 {
    let q = x / (1.0 + x);
    let mut pow = 1.0;
    let mut sum = crate::sum::NeumaierSum::new();
    let mut n = 1u64;
    loop {
        pow *= q;
        let term = pow / n as f64;
        sum.add(term);
        // Remaining terms are below q^{n+1}/((n+1)(1−q)).
        if pow * q / ((n + 1) as f64 * (1.0 - q)) < 1e-17 * sum.value() {
            break;
        }
        n += 1;
    }
    sum.value() / x
}

/// (1/(1−α))(1 − (x/(x+R))^{1−α}) without cancellation.
pub fn shift_ratio(alpha: f64, shift: f64, x: f64) -> f64 {
    if shift == 0.0 {
        return 0.0;
    }
    let e = 1.0 - alpha;
    -(-e * (shift / x).ln_1p()).exp_m1() / e
}

/// Numerical checks of the two auxiliary limits used by the recurrence
/// proof: ln(1+x)/x → 0 through its series, and the shift ratio → 0.
pub fn lemma_limit_checks() -> LemmaReport {
    let log_series: Vec<_> = [1e2, 1e3, 1e4]
        .iter()
        .map(|&x| {
            let series = log_series(x);
            let closed_form = x.ln_1p() / x;
            LogSeriesCheck {
                x,
                series,
                closed_form,
                passed: (series - closed_form).abs() <= 1e-12 * closed_form && (x < 1e4 || series < 1e-2),
            }
        })
        .collect();
    let mut shift = Vec::new();
    for &alpha in &[0.5, 1.3] {
        for &r in &[0.0, 1.0, 2.0] {
            let x = 1e4;
            let value = shift_ratio(alpha, r, x);
            let passed = if r == 0.0 { value == 0.0 } else { value.abs() < 1e-3 };
            shift.push(ShiftRatioCheck {
                alpha,
                shift: r,
                x,
                value,
                passed,
            });
        }
    }
    let decreasing = log_series.windows(2).all(|w| w[1].series < w[0].series);
    let passed = decreasing && log_series.iter().all(|c| c.passed) && shift.iter().all(|c| c.passed);
    LemmaReport {
        log_series,
        shift_ratio: shift,
        passed,
    }
}
