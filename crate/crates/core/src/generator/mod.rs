//! The generator of a stable-like symbol applied to the Lyapunov test
//! functions, and scaled drift profiles against their closed-form limits.

mod apply;
mod lemmas;
mod profile;
mod testfn;

pub use apply::{apply_generator, GeneratorTerms, QuadratureConfig};
pub use lemmas::{lemma_limit_checks, shift_ratio, LemmaReport, LogSeriesCheck, ShiftRatioCheck};
pub use profile::{
    asymptotic_rhs, drift_profile, profile_asymptote, profile_scale, DriftMode, DriftProfile, ProfileFailure,
    ProfilePoint,
};
pub use testfn::{ln1p_minus_linear, phi, phi_derivs, pow1p_minus_linear, TestFunction, TestKind};
