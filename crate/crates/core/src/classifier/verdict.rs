use serde::{Deserialize, Serialize};

use super::grid::{GridSpec, GridValue};

/// Opaque identifiers of the drift conditions, serialized as their wire ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConditionId {
    /// limsup of the cotangent expression below zero: recurrence.
    #[serde(rename = "1.2")]
    Recurrence,
    /// liminf of the same expression above zero: transience.
    #[serde(rename = "1.3")]
    Transience,
    /// θ-family with the |x|^{α−θ} term and E(α, θ): ergodicity.
    #[serde(rename = "1.4")]
    Ergodicity,
    /// fixed small θ with E(α, θ) and no power term: recurrence.
    #[serde(rename = "1.5")]
    RecurrenceFixedTheta,
    /// θ-family with |x|^{α−θ+η}: f-ergodicity for f = |x|^η.
    #[serde(rename = "2.2")]
    FErgodicity,
}

impl ConditionId {
    pub fn wire_id(self) -> &'static str {
        match self {
            ConditionId::Recurrence => "1.2",
            ConditionId::Transience => "1.3",
            ConditionId::Ergodicity => "1.4",
            ConditionId::RecurrenceFixedTheta => "1.5",
            ConditionId::FErgodicity => "2.2",
        }
    }
}

impl std::fmt::Display for ConditionId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.wire_id())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Label {
    Recurrent,
    Transient,
    Ergodic,
    FErgodic,
    Inconclusive,
}

impl Label {
    pub fn name(self) -> &'static str {
        match self {
            Label::Recurrent => "recurrent",
            Label::Transient => "transient",
            Label::Ergodic => "ergodic",
            Label::FErgodic => "f_ergodic",
            Label::Inconclusive => "inconclusive",
        }
    }
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Caveat {
    /// The tail of a condition expression is still moving toward zero.
    NonStabilizing,
    /// A tail estimate lies inside (−margin_tol, margin_tol).
    MarginTooSmall,
    /// One side of the grid certifies a condition and the other does not.
    SidesDisagree,
    /// liminf α < 1 on the grid, so the recurrence condition does not apply.
    AlphaBelowOne,
    /// α has different limits on the two tails. The sharp criterion for
    /// this case (tail indices summing to at least 2) is outside the
    /// sufficient conditions checked here.
    AsymmetricTails,
    /// Some θ on the ergodic grid is not below α(x) at every grid point.
    ThetaOutOfRange,
    /// The ergodic θ-grid did not certify at its two largest values.
    ThetaTraceInconsistent,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionRecord {
    pub id: ConditionId,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    /// Tail limsup (or liminf for transience) estimate.
    pub value: f64,
    pub trend: f64,
    pub certified: bool,
    pub grid: Vec<GridValue>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThetaEntry {
    pub theta: f64,
    pub value: Option<f64>,
    pub trend: Option<f64>,
    pub certified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ClassifierConfig {
    pub grid: GridSpec,
    pub margin_tol: f64,
    /// Largest tolerated slope per grid octave toward the wrong sign.
    pub trend_tol: f64,
    pub alpha_gate_tol: f64,
    pub theta_steps: u32,
}

impl Default for ClassifierConfig {
    fn default() -> Self {
        Self {
            grid: GridSpec::default(),
            margin_tol: 1e-3,
            trend_tol: 1e-3,
            alpha_gate_tol: 1e-6,
            theta_steps: 6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Versions {
    pub library: String,
    pub schema: u32,
}

impl Default for Versions {
    fn default() -> Self {
        Self {
            library: env!("CARGO_PKG_VERSION").to_string(),
            schema: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub label: Label,
    pub margin: f64,
    /// The condition that produced the label, if any.
    pub fired: Option<ConditionId>,
    pub conditions: Vec<ConditionRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta_trace: Option<Vec<ThetaEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta: Option<f64>,
    pub caveats: Vec<Caveat>,
    pub config_echo: ClassifierConfig,
    pub versions: Versions,
}

impl Verdict {
    pub fn condition(&self, id: ConditionId) -> Option<&ConditionRecord> {
        self.conditions.iter().find(|c| c.id == id)
    }
}
