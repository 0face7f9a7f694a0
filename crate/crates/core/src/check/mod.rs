//! Self-check suites: special-function identities and generator sanity
//! checks, run through a swappable [`Kernel`] so faults can be injected.

mod generator_suite;
mod kernel;
mod specfun_suite;

use serde::{Deserialize, Serialize};

pub use kernel::{Fault, FaultyKernel, Kernel, ReferenceKernel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Specfun,
    Generator,
    All,
}

impl std::str::FromStr for Suite {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "specfun" => Ok(Suite::Specfun),
            "generator" => Ok(Suite::Generator),
            "all" => Ok(Suite::All),
            _ => Err(crate::Error::Config(format!(
                "unknown suite {s:?}; expected specfun, generator or all"
            ))),
        }
    }
}

/// One identity checked over a set of inputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRow {
    pub suite: String,
    pub name: String,
    pub identity: String,
    pub cases: usize,
    pub tolerance: f64,
    /// Largest error over the cases (absolute or relative, per the check).
    pub max_error: f64,
    pub passed: bool,
    /// Input of the worst case, and what was observed and expected there.
    pub worst_input: String,
    pub observed: f64,
    pub expected: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub rows: Vec<CheckRow>,
    pub passed: bool,
}

impl CheckReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckRow> {
        self.rows.iter().filter(|r| !r.passed)
    }

    /// Fixed-width text table.
    pub fn table(&self) -> String {
        let mut out = format!(
            "{:<10} {:<28} {:>6} {:>10} {:>10}  {}\n",
            "suite", "check", "cases", "max_err", "tol", "status"
        );
        for r in &self.rows {
            out.push_str(&format!(
                "{:<10} {:<28} {:>6} {:>10.3e} {:>10.1e}  {}\n",
                r.suite,
                r.name,
                r.cases,
                r.max_error,
                r.tolerance,
                if r.passed { "ok" } else { "FAIL" }
            ));
        }
        for r in self.failures() {
            out.push_str(&format!(
                "FAIL {}: {} at {}: observed {:e}, expected {:e}\n",
                r.name, r.identity, r.worst_input, r.observed, r.expected
            ));
        }
        out
    }
}

/// Runs the selected suites with the given kernel.
pub fn run_checks<K: Kernel>(suite: Suite, kernel: &K) -> CheckReport {
    let mut rows = Vec::new();
    if matches!(suite, Suite::Specfun | Suite::All) {
        rows.extend(specfun_suite::run(kernel));
    }
    if matches!(suite, Suite::Generator | Suite::All) {
        rows.extend(generator_suite::run());
    }
    let passed = rows.iter().all(|r| r.passed);
    CheckReport { rows, passed }
}

// Accumulates the worst case of one check.
pub(crate) struct Worst {
    suite: &'static str,
    name: &'static str,
    identity: &'static str,
    tolerance: f64,
    cases: usize,
    err: f64,
    input: String,
    observed: f64,
    expected: f64,
    failed_eval: Option<String>,
}

impl Worst {
    pub(crate) fn new(suite: &'static str, name: &'static str, identity: &'static str, tolerance: f64) -> Self {
        Self {
            suite,
            name,
            identity,
            tolerance,
            cases: 0,
            err: 0.0,
            input: String::new(),
            observed: f64::NAN,
            expected: f64::NAN,
            failed_eval: None,
        }
    }

    pub(crate) fn record(&mut self, input: impl FnOnce() -> String, observed: f64, expected: f64, err: f64) {
        self.cases += 1;
        let err = if err.is_nan() { f64::INFINITY } else { err };
        if err > self.err || self.input.is_empty() {
            self.err = err;
            self.input = input();
            self.observed = observed;
            self.expected = expected;
        }
    }

    pub(crate) fn record_rel(&mut self, input: impl FnOnce() -> String, observed: f64, expected: f64) {
        let err = ((observed - expected) / expected).abs();
        self.record(input, observed, expected, err);
    }

    pub(crate) fn record_abs(&mut self, input: impl FnOnce() -> String, observed: f64, expected: f64) {
        self.record(input, observed, expected, (observed - expected).abs());
    }

    pub(crate) fn fail_eval(&mut self, input: String, err: &crate::Error) {
        self.cases += 1;
        if self.failed_eval.is_none() {
            self.failed_eval = Some(format!("{input}: {err}"));
        }
    }

    pub(crate) fn finish(self) -> CheckRow {
        let passed = self.failed_eval.is_none() && self.cases > 0 && self.err <= self.tolerance;
        CheckRow {
            suite: self.suite.to_string(),
            name: self.name.to_string(),
            identity: self.identity.to_string(),
            cases: self.cases,
            tolerance: self.tolerance,
            max_error: if self.failed_eval.is_some() {
                f64::INFINITY
            } else {
                self.err
            },
            passed,
            worst_input: self.failed_eval.unwrap_or(self.input),
            observed: self.observed,
            expected: self.expected,
        }
    }
}
