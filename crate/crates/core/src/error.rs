use thiserror::Error;

/// Errors produced by the numerical kernel, the coefficient front end and the
/// drivers built on top of them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{func}: pole at x = {x}")]
    Pole { func: &'static str, x: f64 },

    #[error("{func}: result overflows f64 at x = {x}")]
    Overflow { func: &'static str, x: f64 },

    #[error("{func}: argument outside domain ({detail})")]
    Domain { func: &'static str, detail: String },

    #[error("{what}: no convergence after {iterations} steps (error estimate {estimate:e})")]
    NoConvergence {
        what: &'static str,
        iterations: usize,
        estimate: f64,
    },

    #[error("syntax error at byte {offset}: expected {}, found {found}", expected.join(" | "))]
    Syntax {
        offset: usize,
        expected: Vec<String>,
        found: String,
    },

    #[error("evaluation failed at x = {x}: {detail}")]
    Eval { x: f64, detail: String },

    #[error("invalid symbol: {0}")]
    Validation(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("resource limit: {requested} records requested, cap is {cap}")]
    ResourceLimit { requested: u64, cap: u64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(func: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        func,
        detail: detail.into(),
    }
}
