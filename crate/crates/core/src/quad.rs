//! Globally adaptive Gauss-Kronrod (10/21) quadrature on finite intervals.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::sum::NeumaierSum;

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_745_815_343,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights for XGK[1], XGK[3], ..., XGK[9].
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-12,
            max_subdivisions: 2000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub abs_err: f64,
    pub subdivisions: usize,
    pub evaluations: usize,
}

/// One 21-point Kronrod panel: (estimate, error estimate).
pub fn gk21<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let (v, e, _) = gk21_panel(f, a, b);
    (v, e)
}

// Also reports whether the error estimate is the rounding floor, in which
// case subdividing the panel cannot help.
fn gk21_panel<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64, bool) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut res_k = fc * WGK[10];
    let mut res_g = 0.0;
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = res_k * half;
    res_abs *= half.abs();
    res_asc *= half.abs();
    let mut err = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    let round = 50.0 * f64::EPSILON * res_abs;
    let mut floor = false;
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) && round >= err {
        err = round;
        floor = true;
    }
    (value, err, floor)
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

#[derive(Debug, Clone, Copy)]
struct Key {
    err: f64,
    idx: usize,
}

impl PartialEq for Key {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Key {}
impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err).then_with(|| other.idx.cmp(&self.idx))
    }
}

/// Adaptive integration of `f` over `[a, b]`.
pub fn integrate<F: FnMut(f64) -> f64>(f: F, a: f64, b: f64, opts: &QuadOptions) -> Result<QuadResult> {
    integrate_breaks(f, &[a, b], opts)
}

/// Adaptive integration over the partition given by `points` (sorted, at
/// least two entries). Panels never straddle a break point.
pub fn integrate_breaks<F: FnMut(f64) -> f64>(mut f: F, points: &[f64], opts: &QuadOptions) -> Result<QuadResult> {
    if points.len() < 2 {
        return Err(Error::Precondition("need at least two break points".into()));
    }
    let mut panels: Vec<Panel> = Vec::with_capacity(64);
    let mut heap = BinaryHeap::new();
    for w in points.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b <= a {
            continue;
        }
        let (value, err, floor) = gk21_panel(&mut f, a, b);
        if !floor {
            heap.push(Key { err, idx: panels.len() });
        }
        panels.push(Panel { a, b, value, err });
    }
    let mut evaluations = 21 * panels.len();
    let mut subdivisions = 0;
    loop {
        let (value, err) = totals(&panels);
        if !value.is_finite() || !err.is_finite() {
            return Err(Error::NoConvergence {
                what: "quadrature (non-finite integrand)",
                iterations: subdivisions,
                estimate: err,
            });
        }
        if err <= opts.abs_tol.max(opts.rel_tol * value.abs()) {
            return Ok(QuadResult {
                value,
                abs_err: err,
                subdivisions,
                evaluations,
            });
        }
        let Some(Key { idx, .. }) = heap.pop() else {
            return Ok(QuadResult {
                value,
                abs_err: err,
                subdivisions,
                evaluations,
            });
        };
        if subdivisions >= opts.max_subdivisions {
            return Err(Error::NoConvergence {
                what: "adaptive quadrature",
                iterations: subdivisions,
                estimate: err,
            });
        }
        let p = panels[idx];
        let mid = 0.5 * (p.a + p.b);
        if mid <= p.a || mid >= p.b || (p.b - p.a) <= 8.0 * f64::EPSILON * mid.abs() {
            // Cannot refine further; leave the panel out of the heap.
            continue;
        }
        let (v1, e1, floor1) = gk21_panel(&mut f, p.a, mid);
        let (v2, e2, floor2) = gk21_panel(&mut f, mid, p.b);
        evaluations += 42;
        subdivisions += 1;
        panels[idx] = Panel {
            a: p.a,
            b: mid,
            value: v1,
            err: e1,
        };
        if !floor1 {
            heap.push(Key { err: e1, idx });
        }
        if !floor2 {
            heap.push(Key {
                err: e2,
                idx: panels.len(),
            });
        }
        panels.push(Panel {
            a: mid,
            b: p.b,
            value: v2,
            err: e2,
        });
    }
}

fn totals(panels: &[Panel]) -> (f64, f64) {
    let mut v = NeumaierSum::new();
    let mut e = NeumaierSum::new();
    for p in panels {
        v.add(p.value);
        e.add(p.err);
    }
    (v.value(), e.value())
}
