use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Escape grid ±x0·ratio^k, k = 0..count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridSpec {
    pub x0: f64,
    pub ratio: f64,
    pub count: usize,
    pub two_sided: bool,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            x0: 10.0,
            ratio: 2.0,
            count: 12,
            two_sided: true,
        }
    }
}

impl GridSpec {
    pub fn check(&self) -> Result<()> {
        if !(self.x0 > 0.0 && self.x0.is_finite()) {
            return Err(Error::Precondition(format!(
                "grid x0 must be positive, got {}",
                self.x0
            )));
        }
        if !(self.ratio > 1.0 && self.ratio.is_finite()) {
            return Err(Error::Precondition(format!(
                "grid ratio must exceed 1, got {}",
                self.ratio
            )));
        }
        if self.count < 4 {
            return Err(Error::Precondition(format!(
                "grid count must be at least 4, got {}",
                self.count
            )));
        }
        Ok(())
    }

    pub fn magnitudes(&self) -> Vec<f64> {
        (0..self.count).map(|k| self.x0 * self.ratio.powi(k as i32)).collect()
    }

    /// Grid points, positive side first, each side increasing in |x|.
    pub fn points(&self) -> Vec<f64> {
        let m = self.magnitudes();
        let mut out = m.clone();
        if self.two_sided {
            out.extend(m.iter().map(|v| -v));
        }
        out
    }

    /// Number of largest magnitudes that form the tail.
    pub fn tail_len(&self) -> usize {
        self.count.div_ceil(2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridValue {
    pub x: f64,
    pub value: f64,
}

/// Tail summary of one side of the grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SideTail {
    pub sign: i8,
    pub max: f64,
    pub min: f64,
    /// Least-squares slope of the tail values per grid octave.
    pub slope: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    /// Worst side slope in the direction that would move the estimate:
    /// the largest for limsup, the smallest for liminf.
    pub trend: f64,
    pub sides: Vec<SideTail>,
    pub points: Vec<GridValue>,
}

impl Estimate {
    pub fn stabilized(&self, tol: f64) -> bool {
        self.trend.abs() <= tol
    }
}

fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

fn evaluate<F>(f: F, g: &GridSpec) -> Result<(Vec<GridValue>, Vec<SideTail>)>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    g.check()?;
    let pts = g.points();
    let vals: Vec<Result<f64>> = pts.par_iter().map(|&x| f(x)).collect();
    let mut points = Vec::with_capacity(pts.len());
    for (x, v) in pts.iter().zip(vals) {
        let value = v?;
        if !value.is_finite() {
            return Err(Error::Eval {
                x: *x,
                detail: "non-finite condition value".into(),
            });
        }
        points.push(GridValue { x: *x, value });
    }
    let tail = g.tail_len();
    let sides: Vec<SideTail> = points
        .chunks(g.count)
        .map(|side| {
            let t = &side[g.count - tail..];
            let lx: Vec<f64> = t.iter().map(|p| p.x.abs().log(g.ratio)).collect();
            let ys: Vec<f64> = t.iter().map(|p| p.value).collect();
            SideTail {
                sign: if side[0].x > 0.0 { 1 } else { -1 },
                max: ys.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                min: ys.iter().copied().fold(f64::INFINITY, f64::min),
                slope: slope(&lx, &ys),
            }
        })
        .collect();
    Ok((points, sides))
}

/// Tail maximum of f over the escape grid, with the steepest upward side slope.
pub fn estimate_limsup<F>(f: F, g: &GridSpec) -> Result<Estimate>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let (points, sides) = evaluate(f, g)?;
    Ok(Estimate {
        value: sides.iter().map(|s| s.max).fold(f64::NEG_INFINITY, f64::max),
        trend: sides.iter().map(|s| s.slope).fold(f64::NEG_INFINITY, f64::max),
        sides,
        points,
    })
}

/// Tail minimum of f over the escape grid, with the steepest downward side slope.
pub fn estimate_liminf<F>(f: F, g: &GridSpec) -> Result<Estimate>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let (points, sides) = evaluate(f, g)?;
    Ok(Estimate {
        value: sides.iter().map(|s| s.min).fold(f64::INFINITY, f64::min),
        trend: sides.iter().map(|s| s.slope).fold(f64::INFINITY, f64::min),
        sides,
        points,
    })
}
