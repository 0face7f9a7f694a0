use std::f64::consts::PI;

use rand::distr::{Open01, OpenClosed01};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Name recorded in manifests for the generator behind every stream.
pub const RNG_ID: &str = "rand_chacha::ChaCha8Rng (rand_chacha 0.9), seed_from_u64(seed), set_stream(path)";

/// The stream for path `path` of an ensemble seeded with `seed`.
pub fn path_rng(seed: u64, path: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(path);
    rng
}

/// Draws from the symmetric stable law with characteristic function
/// exp(−|ξ|^α) by the Chambers–Mallows–Stuck construction.
///
/// # Panics
///
/// Debug builds assert α ∈ (0, 2].
pub fn sample_symmetric_stable<R: Rng + ?Sized>(alpha: f64, rng: &mut R) -> f64 {
    debug_assert!(alpha > 0.0 && alpha <= 2.0, "alpha {alpha}");
    let u = PI * (rng.sample::<f64, _>(Open01) - 0.5);
    if alpha == 1.0 {
        return u.tan();
    }
    let w = -rng.sample::<f64, _>(OpenClosed01).ln();
    let a = alpha;
    (a * u).sin() / u.cos().powf(1.0 / a) * (((1.0 - a) * u).cos() / w).powf((1.0 - a) / a)
}
