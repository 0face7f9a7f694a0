use serde::{Deserialize, Serialize};

use crate::coeffs::{jump_intensity, SymbolTriple};
use crate::error::{domain, Error, Result};
use crate::quad::{integrate_breaks, QuadOptions};

use super::testfn::{phi, TestFunction, TestKind};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub core_split: f64,
    /// Fixed truncation point for the jump integral; `None` grows it until
    /// the remainder bound is below abs_tol/4.
    pub tail_cut: Option<f64>,
    pub max_subdivisions: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-9,
            core_split: 1e-3,
            tail_cut: None,
            max_subdivisions: 2000,
        }
    }
}

impl QuadratureConfig {
    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    pub fn check(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.abs_tol.is_finite()) {
            return Err(Error::Precondition(format!(
                "abs_tol must be positive, got {}",
                self.abs_tol
            )));
        }
        if !(self.core_split > 0.0 && self.core_split < 1.0) {
            return Err(Error::Precondition(format!(
                "core_split must be in (0,1), got {}",
                self.core_split
            )));
        }
        if let Some(y) = self.tail_cut {
            if !(y > 1.0 && y.is_finite()) {
                return Err(Error::Precondition(format!("tail_cut must exceed 1, got {y}")));
            }
        }
        if self.max_subdivisions == 0 {
            return Err(Error::Precondition("max_subdivisions must be positive".into()));
        }
        Ok(())
    }
}

/// A V(x) split into its pieces. `small_jumps` covers |y| ≤ 1 (including
/// `core`, the Taylor-replaced part on |y| ≤ `core_radius`), `large_jumps`
/// covers |y| > 1 with the part beyond `tail_cut` in closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorTerms {
    pub x: f64,
    pub drift: f64,
    pub small_jumps: f64,
    pub large_jumps: f64,
    pub core: f64,
    pub error_estimate: f64,
    pub core_radius: f64,
    pub tail_cut: f64,
}

impl GeneratorTerms {
    pub fn value(&self) -> f64 {
        self.drift + self.small_jumps + self.large_jumps
    }
}

const KINK_GUARD: f64 = 1e-6;
const MIN_CORE: f64 = 1e-12;
const MAX_TAIL_CUT: f64 = 1e150;

/// Applies the generator of the symbol to V at x.
pub fn apply_generator(t: &SymbolTriple, v: &TestFunction, x: f64, q: &QuadratureConfig) -> Result<GeneratorTerms> {
    q.check()?;
    if !x.is_finite() {
        return Err(domain("apply_generator", format!("x = {x}")));
    }
    if let TestKind::Power { theta } = v.kind() {
        let inf = t.bounds().alpha_inf;
        if theta >= inf {
            return Err(Error::Precondition(format!(
                "power test function needs theta < inf alpha ({theta} >= {inf})"
            )));
        }
    }
    let loc = t.at(x)?;
    let (alpha, beta) = (loc.alpha, loc.beta);
    let c = jump_intensity(alpha, loc.gamma)?;
    if v.is_degenerate() {
        return Ok(GeneratorTerms {
            x,
            drift: 0.0,
            small_jumps: 0.0,
            large_jumps: 0.0,
            core: 0.0,
            error_estimate: 0.0,
            core_radius: q.core_split,
            tail_cut: q.tail_cut.unwrap_or(f64::INFINITY),
        });
    }
    if let TestKind::Power { theta } = v.kind() {
        if x == 0.0 {
            return power_at_origin(x, theta, alpha, c, q);
        }
    }
    Engine { v, x, alpha, c, q }.run(beta)
}

struct Engine<'a> {
    v: &'a TestFunction,
    x: f64,
    alpha: f64,
    c: f64,
    q: &'a QuadratureConfig,
}

impl Engine<'_> {
    fn run(&self, beta: f64) -> Result<GeneratorTerms> {
        let tol = self.q.abs_tol / 4.0;
        let d = self.v.derivs(self.x);
        let drift = if beta == 0.0 { 0.0 } else { beta * d[1] };

        let (core, core_err, h) = self.core(&d, tol);
        let breaks = self.breakpoints();

        let opts = QuadOptions {
            abs_tol: tol,
            rel_tol: 0.0,
            max_subdivisions: self.q.max_subdivisions,
        };
        let shell = self.log_integral(h, 1.0, &breaks, &opts)?;
        let (cut, tail, tail_err) = self.tail(tol)?;
        let large = self.log_integral(1.0, cut, &breaks, &opts)?;

        Ok(GeneratorTerms {
            x: self.x,
            drift,
            small_jumps: core + shell.0,
            large_jumps: large.0 + tail,
            core,
            error_estimate: core_err + shell.1 + large.1 + tail_err,
            core_radius: h,
            tail_cut: cut,
        })
    }

    // Distance from x to the nearest point where V is not smooth.
    fn kink_distance(&self) -> f64 {
        let mut d = (self.x.abs() - 1.0).abs();
        if matches!(self.v.kind(), TestKind::Power { .. }) {
            d = d.min(self.x.abs());
        }
        d
    }

    fn breakpoints(&self) -> Vec<f64> {
        let x = self.x;
        let mut b = vec![(x - 1.0).abs(), (x + 1.0).abs()];
        if matches!(self.v.kind(), TestKind::Power { .. }) {
            b.push(x.abs());
        }
        b
    }

    /// ∫_{|y|<h} with the Taylor form of the symmetric difference. Returns
    /// (value, remainder bound, h).
    fn core(&self, d: &[f64; 5], tol: f64) -> (f64, f64, f64) {
        let (a, c) = (self.alpha, self.c);
        let dist = self.kink_distance();
        if dist > 2.0 * KINK_GUARD {
            // V is C⁴ on [x−h, x+h]: fourth-order form, remainder from the
            // variation of V⁗.
            let mut h = self.q.core_split.min(0.5 * dist);
            loop {
                let var4 = self.sup_over(h, |z| (self.v.derivs(z)[4] - d[4]).abs());
                let bound = c * var4 * h.powf(4.0 - a) / (12.0 * (4.0 - a));
                if bound <= tol || h <= MIN_CORE {
                    let value = c * (d[2] * h.powf(2.0 - a) / (2.0 - a) + d[4] * h.powf(4.0 - a) / (12.0 * (4.0 - a)));
                    return (value, bound, h);
                }
                h /= 4.0;
            }
        }
        // At a C² kink: second-order form with a V‴ bound.
        let mut h = self.q.core_split;
        loop {
            let m3 = self.sup_over(h, |z| self.v.derivs(z)[3].abs());
            let bound = c * m3 * h.powf(3.0 - a) / (3.0 * (3.0 - a));
            if bound <= tol || h <= MIN_CORE {
                return (c * d[2] * h.powf(2.0 - a) / (2.0 - a), bound, h);
            }
            h /= 4.0;
        }
    }

    // Sampled supremum of f on [x−h, x+h], padded by a safety factor.
    fn sup_over(&self, h: f64, f: impl Fn(f64) -> f64) -> f64 {
        const N: usize = 16;
        let mut m: f64 = 0.0;
        for i in 0..=N {
            let z = self.x - h + 2.0 * h * i as f64 / N as f64;
            m = m.max(f(z));
        }
        2.0 * m
    }

    /// c ∫_lo^hi D(y) y^{−1−α} dy in the variable s = ln y.
    fn log_integral(&self, lo: f64, hi: f64, breaks: &[f64], opts: &QuadOptions) -> Result<(f64, f64)> {
        if hi <= lo {
            return Ok((0.0, 0.0));
        }
        let (sl, sh) = (lo.ln(), hi.ln());
        let mut pts = vec![sl];
        let mut inner: Vec<f64> = breaks
            .iter()
            .filter(|&&b| b > lo && b < hi)
            .map(|b| b.ln())
            .filter(|&s| s > sl && s < sh)
            .collect();
        inner.sort_by(f64::total_cmp);
        pts.extend(inner);
        pts.push(sh);
        let (a, c, x, v) = (self.alpha, self.c, self.x, self.v);
        let f = |s: f64| {
            let y = s.exp();
            c * v.second_difference(x, y) * (-a * s).exp()
        };
        let r = integrate_breaks(f, &pts, opts)?;
        Ok((r.value, r.abs_err))
    }

    /// Chooses the truncation Y and returns (Y, closed-form ∫_Y^∞, error bound).
    fn tail(&self, tol: f64) -> Result<(f64, f64, f64)> {
        let ax = self.x.abs();
        let mut y = (4.0 * (ax + 1.0)).max(4.0);
        if let Some(fixed) = self.q.tail_cut {
            y = fixed;
            if y < 4.0 * (ax + 1.0) {
                return Err(Error::Precondition(format!(
                    "tail_cut {fixed} must be at least 4(|x|+1) = {}",
                    4.0 * (ax + 1.0)
                )));
            }
            let (val, err) = self.tail_from(y);
            return Ok((y, val, err));
        }
        loop {
            let (val, err) = self.tail_from(y);
            if err <= tol {
                return Ok((y, val, err));
            }
            if y > MAX_TAIL_CUT {
                return Err(Error::NoConvergence {
                    what: "generator tail truncation",
                    iterations: 0,
                    estimate: err,
                });
            }
            y *= 2.0;
        }
    }

    // c ∫_Y^∞ D(y) y^{−1−α} dy for Y ≥ 4(|x|+1): leading terms exactly,
    // the rest bounded.
    fn tail_from(&self, y: f64) -> (f64, f64) {
        let (a, c, x) = (self.alpha, self.c, self.x);
        let ax1 = 1.0 + x.abs();
        let v0 = self.v.value(x);
        let ya = y.powf(-a);
        match self.v.kind() {
            TestKind::LogBarrier => {
                // D = 2 ln y − 2V(x) + ln1p((1+x)/y) + ln1p((1−x)/y)
                let main = 2.0 * ya * (y.ln() / a + 1.0 / (a * a)) - 2.0 * v0 * ya / a + 2.0 * ya / (y * (1.0 + a));
                let rem = 2.0 * ax1 * ax1 * ya / (y * y * (2.0 + a));
                (c * main, c * rem)
            }
            TestKind::BoundedPower { theta } => {
                // D = 2(1+φ(x))^{−θ} − y^{−θ}[(1+u)^{−θ} + (1+v)^{−θ}], u, v = (1 ± x)/y
                let p = (1.0 + phi(x)).powf(-theta);
                let yt = y.powf(-theta);
                let main =
                    2.0 * p * ya / a - 2.0 * yt * ya / (theta + a) + 2.0 * theta * yt * ya / (y * (theta + 1.0 + a));
                let rem =
                    theta * (theta + 1.0) * 2f64.powf(theta + 2.0) * ax1 * ax1 * yt * ya / (y * y * (theta + 2.0 + a));
                (c * main, c * rem)
            }
            TestKind::Power { theta } => {
                // D = y^θ Σ_k 2 C(θ,2k) (x/y)^{2k} − 2V(x), summed exactly.
                let w2 = (x / y) * (x / y);
                let mut coef = 1.0; // C(θ, 2k)
                let mut wp = 1.0;
                let mut sum = 0.0;
                let mut k = 0u32;
                let mut last = f64::INFINITY;
                while k < 400 {
                    let term = 2.0 * coef * wp / (a + 2.0 * k as f64 - theta);
                    sum += term;
                    last = term.abs();
                    if last <= 1e-17 * sum.abs() {
                        break;
                    }
                    let j = 2.0 * k as f64;
                    coef *= (theta - j) * (theta - j - 1.0) / ((j + 1.0) * (j + 2.0));
                    wp *= w2;
                    k += 1;
                }
                let yt = y.powf(theta - a);
                let main = yt * sum - 2.0 * v0 * ya / a;
                (c * main, c * (yt * last + 1e-16 * main.abs()))
            }
        }
    }
}

// A V(0) for V = φ^θ: V(0) = V′(0) = 0 and
// ∫ φ(y)^θ |y|^{−1−α} dy = 2[∫_0^1 (φ(y)/y²)^θ dv/(2θ−α) + 1/(α−θ)], v = y^{2θ−α}.
fn power_at_origin(x: f64, theta: f64, alpha: f64, c: f64, q: &QuadratureConfig) -> Result<GeneratorTerms> {
    let e = 2.0 * theta - alpha;
    if e <= 0.0 {
        return Err(domain(
            "apply_generator",
            format!("power test function with theta = {theta} is not in the domain at x = 0 for alpha = {alpha}"),
        ));
    }
    let opts = QuadOptions {
        abs_tol: q.abs_tol / 4.0,
        rel_tol: 0.0,
        max_subdivisions: q.max_subdivisions,
    };
    let f = |v: f64| {
        let y = v.powf(1.0 / e);
        let y2 = y * y;
        (1.875 + y2 * (-1.25 + 0.375 * y2)).powf(theta)
    };
    let r = integrate_breaks(f, &[0.0, 1.0], &opts)?;
    let small = 2.0 * c * r.value / e;
    let large = 2.0 * c / (alpha - theta);
    Ok(GeneratorTerms {
        x,
        drift: 0.0,
        small_jumps: small,
        large_jumps: large,
        core: 0.0,
        error_estimate: 2.0 * c * r.abs_err / e,
        core_radius: 0.0,
        tail_cut: f64::INFINITY,
    })
}
