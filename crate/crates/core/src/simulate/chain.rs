use rand::Rng;

use crate::coeffs::SymbolTriple;
use crate::error::Result;

use super::sampler::sample_symmetric_stable;

/// One step of the chain with exponent p(x; ξ)/m, coefficients frozen at x:
/// x + β(x)/m + (γ(x)/m)^{1/α(x)}·S with S symmetric α(x)-stable.
pub fn step_chain<R: Rng + ?Sized>(t: &SymbolTriple, x: f64, m: u32, rng: &mut R) -> Result<f64> {
    let s = t.at(x)?;
    let noise = sample_symmetric_stable(s.alpha, rng);
    Ok(advance(x, s.alpha, s.beta, s.gamma, m, noise))
}

/// The same step with the stable draw supplied by the caller.
#[doc(hidden)]
pub fn step_chain_with_noise(t: &SymbolTriple, x: f64, m: u32, noise: f64) -> Result<f64> {
    let s = t.at(x)?;
    Ok(advance(x, s.alpha, s.beta, s.gamma, m, noise))
}

#[inline]
fn advance(x: f64, alpha: f64, beta: f64, gamma: f64, m: u32, noise: f64) -> f64 {
    let m = m as f64;
    let scale = if gamma == m { 1.0 } else { (gamma / m).powf(1.0 / alpha) };
    x + beta / m + scale * noise
}
