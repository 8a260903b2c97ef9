use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::EnhancementError;

/// Perturbative validity bound on `tau * max|g| * n`.
pub const PERTURBATIVE_LIMIT: f64 = 0.1;

/// Photon pair routed `n` times through the same absorber.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MultiPassSpec {
    pub passes: u32,
    pub k1: f64,
    pub k2: f64,
    /// Optical path between consecutive passes.
    pub path_length: f64,
    pub tau: f64,
    pub g13: f64,
    pub g12: f64,
    pub g11: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MultiPassResult {
    pub two_photon: f64,
    pub one_photon_absorption: f64,
    pub one_photon_scatter: f64,
    pub perturbative: bool,
}

/// `sum_{mu < n} exp(i mu theta)`, accumulated term by term.
pub fn phase_sum(theta: f64, n: u32) -> Complex64 {
    (0..n).map(|mu| Complex64::from_polar(1.0, mu as f64 * theta)).sum()
}

/// `|phase_sum|^2` from `(cos n theta - 1) / (cos theta - 1)`.
pub fn phase_sum_closed_form(theta: f64, n: u32) -> f64 {
    let half = 0.5 * theta;
    let s = half.sin();
    if s.abs() < 1e-300 {
        return (n as f64).powi(2);
    }
    // sin^2 form of the same ratio avoids 0/0 cancellation near theta = 0
    let sn = (n as f64 * half).sin();
    sn * sn / (s * s)
}

pub fn multipass_probabilities(spec: &MultiPassSpec) -> Result<MultiPassResult, EnhancementError> {
    if spec.passes == 0 {
        return Err(EnhancementError::NoPasses);
    }
    let n = spec.passes;
    let t2 = spec.tau * spec.tau;
    let l = spec.path_length;
    let two = phase_sum((spec.k1 + spec.k2) * l, n).norm_sqr();
    let one = phase_sum(spec.k1 * l, n).norm_sqr();
    let gmax = spec.g13.abs().max(spec.g12.abs()).max(spec.g11.abs());
    let strength = spec.tau.abs() * gmax * n as f64;
    if strength > PERTURBATIVE_LIMIT {
        log::warn!("multi-pass outside perturbative regime: tau*g*n = {strength:.3}");
    }
    Ok(MultiPassResult {
        two_photon: t2 * spec.g13 * spec.g13 * two,
        one_photon_absorption: t2 * spec.g12 * spec.g12 * one,
        one_photon_scatter: t2 * spec.g11 * spec.g11 * n as f64,
        perturbative: strength <= PERTURBATIVE_LIMIT,
    })
}
