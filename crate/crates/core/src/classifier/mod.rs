//! Recurrence, transience and ergodicity verdicts from the drift
//! conditions, estimated on geometric escape grids.

mod classify;
mod grid;
mod verdict;

pub use classify::{classify, classify_f_ergodic, condition_value, constant_index_label, fixed_theta, theta_grid};
pub use grid::{estimate_liminf, estimate_limsup, Estimate, GridSpec, GridValue, SideTail};
pub use verdict::{Caveat, ClassifierConfig, ConditionId, ConditionRecord, Label, ThetaEntry, Verdict, Versions};
