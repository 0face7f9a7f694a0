//! Numerical toolkit for one-dimensional stable-like processes with symbol
//! p(x, ξ) = −iβ(x)ξ + γ(x)|ξ|^{α(x)}.

#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod check;
pub mod classifier;
pub mod coeffs;
pub mod error;
pub mod generator;
pub mod quad;
pub mod simulate;
pub mod specfun;
pub mod sum;

pub use error::{Error, Result};
