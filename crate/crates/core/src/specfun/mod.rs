//! Special functions: Gamma, digamma, Gauss ₂F₁, binomial coefficients and
//! the cotangent and θ-dependent constants that enter the drift conditions.

mod econst;
mod gamma;
mod hyper;

pub use econst::{
    binom_even_series, cot_series_check, e_const, e_const_args, partial_fraction_cot, pi_cot_half, transient_const,
    EArgs,
};
pub use gamma::{cos_pi, digamma, gamma_fn, ln_gamma, rgamma, sin_pi, EULER_GAMMA};
pub use hyper::{
    connection_rhs, euler_integral, gauss_2f1, gauss_2f1_eval, gen_binom, series as hyp2f1_series, Hyp2f1Eval,
    Hyp2f1Method, HypergeomParams,
};
