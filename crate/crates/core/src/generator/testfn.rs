use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Lyapunov candidate V = G∘φ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TestKind {
    /// V = ln(1 + φ)
    LogBarrier,
    /// V = 1 − (1 + φ)^{−θ}, θ ∈ (0, 1)
    BoundedPower { theta: f64 },
    /// V = φ^θ, θ ∈ (0, 2); the generator needs θ < inf α.
    Power { theta: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub(crate) enum Smoothing {
    Standard,
    Zero,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestFunction {
    kind: TestKind,
    #[serde(skip, default = "standard")]
    smoothing: Smoothing,
}

fn standard() -> Smoothing {
    Smoothing::Standard
}

/// The smoothing φ(x) = 1.875x² − 1.25x⁴ + 0.375x⁶ on [−1, 1], |x| outside.
pub fn phi(x: f64) -> f64 {
    let a = x.abs();
    if a >= 1.0 {
        return a;
    }
    let x2 = x * x;
    x2 * (1.875 + x2 * (-1.25 + 0.375 * x2))
}

/// φ and its first six derivatives at x (one-sided from inside at |x| = 1).
pub fn phi_derivs(x: f64) -> [f64; 7] {
    if x.abs() > 1.0 {
        return [x.abs(), x.signum(), 0.0, 0.0, 0.0, 0.0, 0.0];
    }
    let x2 = x * x;
    [
        phi(x),
        x * (3.75 + x2 * (-5.0 + 2.25 * x2)),
        3.75 + x2 * (-15.0 + 11.25 * x2),
        x * (-30.0 + 45.0 * x2),
        -30.0 + 135.0 * x2,
        270.0 * x,
        270.0,
    ]
}

/// φ(x + y) − φ(x), φ(x − y) − φ(x) and their sum, each without
/// cancellation when x ± y stay on the piece containing x.
fn phi_increments(x: f64, y: f64) -> (f64, f64, f64) {
    let (xp, xm) = (x + y, x - y);
    if x.abs() <= 1.0 && xp.abs() <= 1.0 && xm.abs() <= 1.0 {
        let d = phi_derivs(x);
        let (y2, y3) = (y * y, y * y * y);
        let odd = d[1] * y + d[3] * y3 / 6.0 + d[5] * y2 * y3 / 120.0;
        let even = d[2] * y2 / 2.0 + d[4] * y2 * y2 / 24.0 + d[6] * y3 * y3 / 720.0;
        return (even + odd, even - odd, 2.0 * even);
    }
    if (xm > 1.0 && x > 1.0) || (xp < -1.0 && x < -1.0) {
        // Same outer piece on both sides (y ≥ 0).
        let s = x.signum();
        return (s * y, -s * y, 0.0);
    }
    let p = phi(x);
    let a = phi(xp) - p;
    let b = phi(xm) - p;
    (a, b, a + b)
}

/// ln(1+s) − s.
pub fn ln1p_minus_linear(s: f64) -> f64 {
    if s.abs() < 0.1 {
        let mut pow = s;
        let mut sum = 0.0;
        let mut k = 2.0;
        loop {
            pow *= -s;
            let t = pow / k;
            sum += t;
            if t.abs() < 1e-18 * sum.abs() {
                return sum;
            }
            k += 1.0;
        }
    }
    s.ln_1p() - s
}

/// (1+s)^q − 1 − q·s.
pub fn pow1p_minus_linear(q: f64, s: f64) -> f64 {
    if s.abs() < 0.1 {
        let mut coef = q; // C(q, k)
        let mut pow = s;
        let mut sum = 0.0;
        let mut k = 1.0;
        loop {
            coef *= (q - k) / (k + 1.0);
            pow *= s;
            let t = coef * pow;
            sum += t;
            if t.abs() <= 1e-18 * sum.abs() || coef == 0.0 {
                break;
            }
            k += 1.0;
            if k > 200.0 {
                break;
            }
        }
        return sum;
    }
    (q * s.ln_1p()).exp_m1() - q * s
}

impl TestFunction {
    pub fn new(kind: TestKind) -> Result<Self> {
        match kind {
            TestKind::LogBarrier => {}
            TestKind::BoundedPower { theta } => {
                if !(theta > 0.0 && theta < 1.0) {
                    return Err(domain(
                        "TestFunction",
                        format!("bounded-power theta {theta} not in (0,1)"),
                    ));
                }
            }
            TestKind::Power { theta } => {
                if !(theta > 0.0 && theta < 2.0) {
                    return Err(domain("TestFunction", format!("power theta {theta} not in (0,2)")));
                }
            }
        }
        Ok(Self {
            kind,
            smoothing: Smoothing::Standard,
        })
    }

    pub fn log_barrier() -> Self {
        Self {
            kind: TestKind::LogBarrier,
            smoothing: Smoothing::Standard,
        }
    }

    pub fn bounded_power(theta: f64) -> Result<Self> {
        Self::new(TestKind::BoundedPower { theta })
    }

    pub fn power(theta: f64) -> Result<Self> {
        Self::new(TestKind::Power { theta })
    }

    /// Test hook: replace φ by 0, so V is constant.
    #[doc(hidden)]
    pub fn with_zero_smoothing(mut self) -> Self {
        self.smoothing = Smoothing::Zero;
        self
    }

    pub(crate) fn is_degenerate(&self) -> bool {
        self.smoothing == Smoothing::Zero
    }

    pub fn kind(&self) -> TestKind {
        self.kind
    }

    pub fn theta(&self) -> Option<f64> {
        match self.kind {
            TestKind::LogBarrier => None,
            TestKind::BoundedPower { theta } | TestKind::Power { theta } => Some(theta),
        }
    }

    fn g(&self, p: f64) -> f64 {
        match self.kind {
            TestKind::LogBarrier => p.ln_1p(),
            TestKind::BoundedPower { theta } => -(-theta * p.ln_1p()).exp_m1(),
            TestKind::Power { theta } => p.powf(theta),
        }
    }

    // G and its first four derivatives at p.
    fn g_derivs(&self, p: f64) -> [f64; 5] {
        match self.kind {
            TestKind::LogBarrier => {
                let r = 1.0 / (1.0 + p);
                [p.ln_1p(), r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r]
            }
            TestKind::BoundedPower { theta } => {
                let q = 1.0 + p;
                let base = q.powf(-theta);
                let mut out = [1.0 - base, 0.0, 0.0, 0.0, 0.0];
                let mut f = 1.0;
                for (k, o) in out.iter_mut().enumerate().skip(1) {
                    f *= -(theta + (k - 1) as f64);
                    *o = -f * base / q.powi(k as i32);
                }
                out
            }
            TestKind::Power { theta } => {
                let mut out = [p.powf(theta), 0.0, 0.0, 0.0, 0.0];
                let mut f = 1.0;
                for (k, o) in out.iter_mut().enumerate().skip(1) {
                    f *= theta - (k - 1) as f64;
                    *o = f * p.powf(theta - k as f64);
                }
                out
            }
        }
    }

    pub fn value(&self, x: f64) -> f64 {
        if self.is_degenerate() {
            return self.g(0.0);
        }
        self.g(phi(x))
    }

    /// V and its first four derivatives (chain rule through φ).
    pub fn derivs(&self, x: f64) -> [f64; 5] {
        if self.is_degenerate() {
            return [self.g(0.0), 0.0, 0.0, 0.0, 0.0];
        }
        let p = phi_derivs(x);
        let g = self.g_derivs(p[0]);
        let (p1, p2, p3, p4) = (p[1], p[2], p[3], p[4]);
        [
            g[0],
            g[1] * p1,
            g[2] * p1 * p1 + g[1] * p2,
            g[3] * p1 * p1 * p1 + 3.0 * g[2] * p1 * p2 + g[1] * p3,
            g[4] * p1.powi(4) + 6.0 * g[3] * p1 * p1 * p2 + g[2] * (3.0 * p2 * p2 + 4.0 * p1 * p3) + g[1] * p4,
        ]
    }

    // G(p + t) − G(p) − G′(p)·t.
    fn remainder(&self, p: f64, t: f64) -> f64 {
        match self.kind {
            TestKind::LogBarrier => ln1p_minus_linear(t / (1.0 + p)),
            TestKind::BoundedPower { theta } => {
                let q = 1.0 + p;
                -q.powf(-theta) * pow1p_minus_linear(-theta, t / q)
            }
            TestKind::Power { theta } => {
                if p == 0.0 {
                    return t.powf(theta);
                }
                p.powf(theta) * pow1p_minus_linear(theta, t / p)
            }
        }
    }

    /// V(x + y) + V(x − y) − 2V(x) for y ≥ 0.
    pub fn second_difference(&self, x: f64, y: f64) -> f64 {
        if self.is_degenerate() {
            return 0.0;
        }
        let (a, b, sum) = phi_increments(x, y);
        let p = phi(x);
        let g1 = match self.kind {
            TestKind::Power { .. } if p == 0.0 => 0.0,
            _ => self.g_derivs(p)[1],
        };
        g1 * sum + self.remainder(p, a) + self.remainder(p, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smoothing_matches_abs_to_second_order() {
        let d = phi_derivs(1.0);
        assert_eq!(d[0], 1.0);
        assert!((d[1] - 1.0).abs() < 1e-15);
        assert!(d[2].abs() < 1e-14);
        let d = phi_derivs(-1.0);
        assert!((d[1] + 1.0).abs() < 1e-15 && d[2].abs() < 1e-14);
        for i in 0..=200 {
            let x = -1.0 + i as f64 / 100.0;
            assert!(phi(x) >= 0.0 && phi(x) <= x.abs() + 1e-15, "{x}");
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let fns = [
            TestFunction::log_barrier(),
            TestFunction::bounded_power(0.3).unwrap(),
            TestFunction::power(1.4).unwrap(),
        ];
        for f in fns {
            for &x in &[-3.0, -0.7, 0.2, 0.55, 2.5] {
                let d = f.derivs(x);
                let h = 1e-4;
                for k in 0..4 {
                    let fd = {
                        let g = |x: f64| f.derivs(x)[k];
                        (g(x + h) - g(x - h)) / (2.0 * h)
                    };
                    assert!(
                        (fd - d[k + 1]).abs() < 1e-5 * d[k + 1].abs().max(1.0),
                        "{:?} x={x} k={k}",
                        f.kind()
                    );
                }
                assert!((d[0] - f.value(x)).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn second_difference_matches_direct() {
        let fns = [
            TestFunction::log_barrier(),
            TestFunction::bounded_power(0.6).unwrap(),
            TestFunction::power(0.9).unwrap(),
        ];
        for f in fns {
            for &x in &[-5.0, -1.0, -0.3, 0.0, 0.8, 1.0, 3.0] {
                for &y in &[0.05, 0.4, 1.3, 7.0] {
                    let direct = f.value(x + y) + f.value(x - y) - 2.0 * f.value(x);
                    let got = f.second_difference(x, y);
                    assert!(
                        (got - direct).abs() < 1e-13,
                        "{:?} x={x} y={y}: {got} vs {direct}",
                        f.kind()
                    );
                }
            }
        }
    }

    #[test]
    fn second_difference_far_out_is_accurate() {
        let f = TestFunction::log_barrier();
        let (x, y): (f64, f64) = (1e6, 0.5);
        let u = y / (1.0 + x);
        let want = (-u * u).ln_1p();
        assert!(((f.second_difference(x, y) - want) / want).abs() < 1e-12);
    }

    #[test]
    fn expansion_helpers() {
        // Independent references: truncated Taylor polynomials for small s,
        // direct forms otherwise.
        let ln_ref = |s: f64| {
            if s.abs() < 0.1 {
                (2..40).map(|k| -(-s).powi(k) / k as f64).sum::<f64>()
            } else {
                s.ln_1p() - s
            }
        };
        let q: f64 = -0.4;
        let pow_ref = |s: f64| {
            if s.abs() < 0.1 {
                let mut c = q;
                let mut acc = 0.0;
                for k in 1..60 {
                    c *= (q - k as f64) / (k + 1) as f64;
                    acc += c * s.powi(k + 1);
                }
                acc
            } else {
                (1.0 + s).powf(q) - 1.0 - q * s
            }
        };
        for &s in &[-0.09, -1e-5, 1e-8, 0.05, 0.2, 3.0] {
            let want = ln_ref(s);
            assert!((ln1p_minus_linear(s) - want).abs() <= 1e-14 * want.abs(), "{s}");
            let want = pow_ref(s);
            assert!((pow1p_minus_linear(q, s) - want).abs() <= 1e-13 * want.abs(), "{s}");
        }
        assert!((ln1p_minus_linear(1e-10) + 5e-21).abs() < 1e-30);
    }
}
