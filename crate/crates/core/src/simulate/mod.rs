//! Monte Carlo for the approximating chains with exponent p(x; ξ)/m.

mod chain;
mod diagnostics;
mod ensemble;
mod sampler;

pub use chain::{step_chain, step_chain_with_noise};
pub use diagnostics::{diagnostics, quantile, Diagnostics, ProbeBands, Quantiles};
pub use ensemble::{simulate_ensemble, PathEnsemble, PathStats, SimConfig};
pub use sampler::{path_rng, sample_symmetric_stable, RNG_ID};
