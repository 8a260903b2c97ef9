//! Enhancement of two-photon absorption over one-photon loss.
//!
//! Repeated passes through one absorber ([`multipass`]), collective Dicke
//! excitation of many emitters ([`quasispin`], [`phases`]) and the pump that
//! sustains that excitation ([`pump`]).

pub mod multipass;
pub mod phases;
pub mod pump;
pub mod quasispin;

use thiserror::Error;

use crate::absorber::AbsorberError;

pub use multipass::{multipass_probabilities, phase_sum, phase_sum_closed_form, MultiPassResult, MultiPassSpec};
pub use phases::{random_phase_sum, PhaseSumEstimate};
pub use pump::{pump_steady_state, PumpSpec, PumpSteadyState};
pub use quasispin::{dicke_enhancement, quasispin_apply, DickeFactors, Ladder, QuasispinEnsemble};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EnhancementError {
    #[error("pass count must be at least 1")]
    NoPasses,
    #[error("excitation count {s} exceeds emitter count {total}")]
    Excitations { s: u64, total: u64 },
    #[error("Monte-Carlo needs at least one trial")]
    NoTrials,
    #[error("box dimensions must be positive")]
    BoxSize,
    #[error("{name} must be non-negative, got {value}")]
    Negative { name: &'static str, value: f64 },
    #[error("pump frequencies sum to {pump}, photon pair to {photons}; phase matching requires equality")]
    PhaseMatching { pump: f64, photons: f64 },
    #[error(transparent)]
    Absorber(#[from] AbsorberError),
}

/// Enhancement still needed after `n` passes and `s` collective excitations.
///
/// Combined mechanisms multiply: `n * s * kappa_0 = kappa_target`.
pub fn combined_enhancement(kappa_target: f64, kappa_0: f64) -> f64 {
    kappa_target / kappa_0
}
