use serde::{Deserialize, Serialize};

use super::expr::CoefficientExpr;
use super::parser::parse_coefficient_with;
use crate::error::{Error, Result};
use crate::specfun::gamma_fn;

const ALPHA_MARGIN: f64 = 1e-6;
const GAMMA_FLOOR: f64 = 1e-9;
const BETA_CAP: f64 = 1e6;
const JUMP_TOL: f64 = 1e-8;

/// Uniform sampling grid on [−xmax, xmax] used to establish coefficient bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleGrid {
    pub xmax: f64,
    pub points: usize,
}

impl Default for SampleGrid {
    fn default() -> Self {
        Self {
            xmax: 1e4,
            points: 20_001,
        }
    }
}

impl SampleGrid {
    pub fn check(&self) -> Result<()> {
        if !(self.xmax >= 1e4 && self.xmax.is_finite()) || self.points < 10_000 {
            return Err(Error::Config(format!(
                "validation grid needs xmax >= 1e4 and >= 1e4 points, got xmax = {}, points = {}",
                self.xmax, self.points
            )));
        }
        Ok(())
    }

    pub fn node(&self, i: usize) -> f64 {
        let h = 2.0 * self.xmax / (self.points - 1) as f64;
        -self.xmax + h * i as f64
    }
}

/// The three coefficient expressions, not yet validated.
#[derive(Debug, Clone, PartialEq)]
pub struct Coefficients {
    pub alpha: CoefficientExpr,
    pub beta: CoefficientExpr,
    pub gamma: CoefficientExpr,
}

impl Coefficients {
    pub fn parse(alpha: &str, beta: &str, gamma: &str, blend_width: f64) -> Result<Self> {
        Ok(Self {
            alpha: parse_coefficient_with(alpha, blend_width)?,
            beta: parse_coefficient_with(beta, blend_width)?,
            gamma: parse_coefficient_with(gamma, blend_width)?,
        })
    }

    pub fn constant(alpha: f64, beta: f64, gamma: f64) -> Self {
        Self {
            alpha: CoefficientExpr::constant(alpha),
            beta: CoefficientExpr::constant(beta),
            gamma: CoefficientExpr::constant(gamma),
        }
    }
}

/// Sampled range of one coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Range {
    pub min: f64,
    pub max: f64,
    pub argmin: f64,
    pub argmax: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub grid: SampleGrid,
    pub alpha: Range,
    pub beta: Range,
    pub gamma: Range,
    pub passed: bool,
    pub failures: Vec<String>,
    pub warnings: Vec<String>,
}

/// Sampling-based bounds of a validated symbol.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bounds {
    pub alpha_inf: f64,
    pub alpha_sup: f64,
    pub gamma_inf: f64,
    pub beta_sup_abs: f64,
}

fn sample(e: &CoefficientExpr, grid: &SampleGrid) -> Result<(Range, Vec<f64>)> {
    let mut vals = Vec::with_capacity(grid.points);
    let mut r = Range {
        min: f64::INFINITY,
        max: f64::NEG_INFINITY,
        argmin: 0.0,
        argmax: 0.0,
    };
    for i in 0..grid.points {
        let x = grid.node(i);
        let v = e.eval(x)?;
        if v < r.min {
            r.min = v;
            r.argmin = x;
        }
        if v > r.max {
            r.max = v;
            r.argmax = x;
        }
        vals.push(v);
    }
    Ok((r, vals))
}

// Bisect the grid cell with the largest first difference. A continuous
// coefficient's difference shrinks with the cell; a jump does not.
fn jump_probe(e: &CoefficientExpr, grid: &SampleGrid, vals: &[f64]) -> Result<Option<(f64, f64)>> {
    let Some((i, _)) = vals
        .windows(2)
        .enumerate()
        .map(|(i, w)| (i, (w[1] - w[0]).abs()))
        .max_by(|a, b| a.1.total_cmp(&b.1))
    else {
        return Ok(None);
    };
    let (mut a, mut b) = (grid.node(i), grid.node(i + 1));
    let (mut fa, mut fb) = (vals[i], vals[i + 1]);
    for _ in 0..60 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = e.eval(m)?;
        if (fm - fa).abs() >= (fb - fm).abs() {
            b = m;
            fb = fm;
        } else {
            a = m;
            fa = fm;
        }
    }
    let d = (fb - fa).abs();
    Ok((d > JUMP_TOL).then_some((0.5 * (a + b), d)))
}

/// Sample the coefficients on `grid` and check the standing assumptions
/// 0 < α < 2, γ > 0 and bounded β.
pub fn validate_triple(c: &Coefficients, grid: &SampleGrid) -> Result<ValidationReport> {
    grid.check()?;
    let (alpha, av) = sample(&c.alpha, grid)?;
    let (beta, bv) = sample(&c.beta, grid)?;
    let (gamma, gv) = sample(&c.gamma, grid)?;
    let mut failures = Vec::new();
    if alpha.min <= ALPHA_MARGIN {
        failures.push(format!(
            "alpha_inf {} is not in (0,2) (at x = {})",
            alpha.min, alpha.argmin
        ));
    }
    if alpha.max >= 2.0 - ALPHA_MARGIN {
        failures.push(format!(
            "alpha_sup {} is not in (0,2) (at x = {})",
            alpha.max, alpha.argmax
        ));
    }
    if gamma.min <= GAMMA_FLOOR {
        failures.push(format!(
            "gamma_inf {} is not positive (at x = {})",
            gamma.min, gamma.argmin
        ));
    }
    let beta_abs = beta.max.abs().max(beta.min.abs());
    if beta_abs > BETA_CAP {
        failures.push(format!("|beta| reaches {beta_abs}, above {BETA_CAP}"));
    }
    let mut warnings = Vec::new();
    for (name, e, vals) in [
        ("alpha", &c.alpha, &av),
        ("beta", &c.beta, &bv),
        ("gamma", &c.gamma, &gv),
    ] {
        for w in e.warnings() {
            warnings.push(format!("{name}: byte {}: {}", w.offset, w.message));
        }
        if e.as_constant().is_none() {
            if let Some((x, d)) = jump_probe(e, grid, vals)? {
                warnings.push(format!(
                    "{name}: apparent discontinuity of size {d:.3e} near x = {x:.6}"
                ));
            }
        }
    }
    Ok(ValidationReport {
        grid: *grid,
        alpha,
        beta,
        gamma,
        passed: failures.is_empty(),
        failures,
        warnings,
    })
}

/// c = γ·α·2^{α−1}·Γ((α+1)/2) / (√π·Γ(1 − α/2)).
pub fn jump_intensity(alpha: f64, gamma: f64) -> Result<f64> {
    let g = gamma_fn(0.5 * (alpha + 1.0))? / gamma_fn(1.0 - 0.5 * alpha)?;
    Ok(gamma * alpha * 2f64.powf(alpha - 1.0) * g / std::f64::consts::PI.sqrt())
}

/// Coefficient values at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LocalSymbol {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

/// A validated symbol triple (α, β, γ).
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolTriple {
    coeffs: Coefficients,
    bounds: Bounds,
    report: ValidationReport,
}

impl SymbolTriple {
    pub fn new(coeffs: Coefficients, grid: &SampleGrid) -> Result<Self> {
        let report = validate_triple(&coeffs, grid)?;
        if !report.passed {
            return Err(Error::Validation(report.failures.join("; ")));
        }
        let bounds = Bounds {
            alpha_inf: report.alpha.min,
            alpha_sup: report.alpha.max,
            gamma_inf: report.gamma.min,
            beta_sup_abs: report.beta.max.abs().max(report.beta.min.abs()),
        };
        Ok(Self { coeffs, bounds, report })
    }

    /// Parse and validate on the default grid.
    pub fn parse(alpha: &str, beta: &str, gamma: &str) -> Result<Self> {
        Self::new(Coefficients::parse(alpha, beta, gamma, 1.0)?, &SampleGrid::default())
    }

    pub fn constant(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        Self::new(Coefficients::constant(alpha, beta, gamma), &SampleGrid::default())
    }

    pub fn coefficients(&self) -> &Coefficients {
        &self.coeffs
    }

    pub fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    pub fn report(&self) -> &ValidationReport {
        &self.report
    }

    pub fn at(&self, x: f64) -> Result<LocalSymbol> {
        Ok(LocalSymbol {
            alpha: self.coeffs.alpha.eval(x)?,
            beta: self.coeffs.beta.eval(x)?,
            gamma: self.coeffs.gamma.eval(x)?,
        })
    }

    pub fn alpha(&self, x: f64) -> Result<f64> {
        self.coeffs.alpha.eval(x)
    }

    pub fn beta(&self, x: f64) -> Result<f64> {
        self.coeffs.beta.eval(x)
    }

    pub fn gamma(&self, x: f64) -> Result<f64> {
        self.coeffs.gamma.eval(x)
    }

    /// Whether α and γ are even and β vanishes (as expressions are compared
    /// only when all three are constants).
    pub fn is_constant(&self) -> bool {
        self.coeffs.alpha.as_constant().is_some()
            && self.coeffs.beta.as_constant().is_some()
            && self.coeffs.gamma.as_constant().is_some()
    }
}

/// Jump intensity c(x) of the symbol.
pub fn c_of_x(t: &SymbolTriple, x: f64) -> Result<f64> {
    let s = t.at(x)?;
    jump_intensity(s.alpha, s.gamma)
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
enum ExprField {
    Text(String),
    Number(f64),
}

impl ExprField {
    fn text(&self) -> String {
        match self {
            ExprField::Text(s) => s.clone(),
            ExprField::Number(v) => format!("{v:?}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridSection {
    xmax: Option<f64>,
    points: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSymbolFile {
    alpha: ExprField,
    beta: ExprField,
    gamma: ExprField,
    blend_width: Option<f64>,
    grid: Option<GridSection>,
}

/// Contents of a symbol file (TOML):
///
/// ```toml
/// alpha = "1.2 + 0.3*tanh(x)"
/// beta = "0"
/// gamma = 1
/// blend_width = 1.0        # optional, default width for piece(...)
/// [grid]                   # optional validation grid
/// xmax = 1e4
/// points = 20001
/// ```
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymbolFile {
    pub alpha: String,
    pub beta: String,
    pub gamma: String,
    pub blend_width: f64,
    pub grid: SampleGrid,
}

impl SymbolFile {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let raw: RawSymbolFile = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let mut grid = SampleGrid::default();
        if let Some(g) = raw.grid {
            if let Some(x) = g.xmax {
                grid.xmax = x;
            }
            if let Some(p) = g.points {
                grid.points = p;
            }
        }
        Ok(Self {
            alpha: raw.alpha.text(),
            beta: raw.beta.text(),
            gamma: raw.gamma.text(),
            blend_width: raw.blend_width.unwrap_or(1.0),
            grid,
        })
    }

    /// Parse the three expressions, tagging syntax errors with the key.
    pub fn coefficients(&self) -> Result<Coefficients> {
        let parse = |key: &str, src: &str| {
            parse_coefficient_with(src, self.blend_width).map_err(|e| match e {
                Error::Syntax { .. } => Error::Config(format!("{key} = \"{src}\": {e}")),
                other => other,
            })
        };
        Ok(Coefficients {
            alpha: parse("alpha", &self.alpha)?,
            beta: parse("beta", &self.beta)?,
            gamma: parse("gamma", &self.gamma)?,
        })
    }

    pub fn triple(&self) -> Result<SymbolTriple> {
        SymbolTriple::new(self.coefficients()?, &self.grid)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intensity_closed_forms() {
        assert!((jump_intensity(1.0, 1.0).unwrap() - 1.0 / std::f64::consts::PI).abs() < 1e-15);
        let want = 0.5 / (2.0 * std::f64::consts::PI).sqrt();
        assert!((jump_intensity(0.5, 1.0).unwrap() - want).abs() < 1e-15);
    }

    #[test]
    fn validation_outcomes() {
        let g = SampleGrid::default();
        let ok = validate_triple(&Coefficients::parse("1.5", "0", "1", 1.0).unwrap(), &g).unwrap();
        assert!(ok.passed);
        assert_eq!((ok.alpha.min, ok.alpha.max), (1.5, 1.5));
        let bad = validate_triple(&Coefficients::parse("2.1", "0", "1", 1.0).unwrap(), &g).unwrap();
        assert!(!bad.passed && bad.failures[0].contains("alpha_sup"));
        let osc = validate_triple(&Coefficients::parse("1.2+0.9*sin(x)", "0", "1", 1.0).unwrap(), &g).unwrap();
        assert!(!osc.passed);
        assert!(osc.alpha.max > 2.09 && osc.alpha.max < 2.1);
        let g0 = validate_triple(&Coefficients::parse("1.5", "0", "0", 1.0).unwrap(), &g).unwrap();
        assert!(!g0.passed);
        let b = validate_triple(&Coefficients::parse("1.5", "2e6*tanh(x)", "1", 1.0).unwrap(), &g).unwrap();
        assert!(!b.passed);
    }

    #[test]
    fn jump_warning() {
        let g = SampleGrid::default();
        let r = validate_triple(&Coefficients::parse("1.5", "sgn(x - 0.3)", "1", 1.0).unwrap(), &g).unwrap();
        assert!(r.passed);
        assert!(
            r.warnings.iter().any(|w| w.starts_with("beta: apparent discontinuity")),
            "{:?}",
            r.warnings
        );
        let r = validate_triple(
            &Coefficients::parse("piece(0, 0.8, 1.4)", "tanh(x)", "1", 1.0).unwrap(),
            &g,
        )
        .unwrap();
        assert!(r.warnings.is_empty(), "{:?}", r.warnings);
    }

    #[test]
    fn symbol_file_round_trip() {
        let f = SymbolFile::from_toml_str(
            "alpha = \"piece(0, 0.8, 1.4)\"\nbeta = 0\ngamma = \"1\"\nblend_width = 2.0\n[grid]\nxmax = 2e4\n",
        )
        .unwrap();
        assert_eq!(f.blend_width, 2.0);
        assert_eq!(f.grid.xmax, 2e4);
        assert_eq!(f.grid.points, 20_001);
        let t = f.triple().unwrap();
        let a = t.alpha(0.5).unwrap();
        assert!((a - (0.8 + 0.6 * 0.84375)).abs() < 1e-15, "{a}");
        assert!(SymbolFile::from_toml_str("alpha = 1\nbeta = 0\n").is_err());
        assert!(SymbolFile::from_toml_str("alpha = 1\nbeta = 0\ngamma = 1\nfoo = 2\n").is_err());
        let e = SymbolFile::from_toml_str("alpha = \"1.5 +\"\nbeta = 0\ngamma = 1\n")
            .unwrap()
            .triple()
            .unwrap_err();
        assert!(e.to_string().contains("alpha"), "{e}");
    }
}
