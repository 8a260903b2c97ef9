//! Single three-level atom as two-photon absorber.
//!
//! Energies, frequencies, lengths and areas are in natural units (eV, 1/eV,
//! 1/eV^2). The level structure is 1s - 2p - 3s; the target photon `omega_1`
//! and control photon `omega_2` are jointly resonant with 1s - 3s.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numerics::units::{wavelength_to_omega, HBAR_EV_S};
use crate::numerics::PhysicalConstants;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AbsorberError {
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("detuning {name} is zero")]
    ZeroDetuning { name: &'static str },
    #[error("one-photon scattering vanishes; the absorption ratio is unbounded")]
    UnboundedRatio,
    #[error("no real destructive-interference frequency: 2 m l^2 E12 = {0} > 1")]
    NoInterference(f64),
}

fn positive(name: &'static str, value: f64) -> Result<f64, AbsorberError> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(AbsorberError::NonPositive { name, value })
    }
}

/// Three-level absorber and the photon pair it sees.
///
/// `E23` is fixed by two-photon resonance and both detunings follow from the
/// photon frequencies, so those invariants hold by construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AtomSpec {
    e12: f64,
    omega_1: f64,
    omega_2: f64,
    dipole_length: f64,
    area: f64,
    coupling_ratio: f64,
    constants: PhysicalConstants,
}

impl AtomSpec {
    pub fn new(
        e12: f64,
        omega_1: f64,
        omega_2: f64,
        dipole_length: f64,
        area: f64,
        coupling_ratio: f64,
    ) -> Result<Self, AbsorberError> {
        let spec = Self {
            e12: positive("E12", e12)?,
            omega_1: positive("omega_1", omega_1)?,
            omega_2: positive("omega_2", omega_2)?,
            dipole_length: positive("dipole length", dipole_length)?,
            area: positive("area", area)?,
            coupling_ratio: positive("coupling ratio f", coupling_ratio)?,
            constants: PhysicalConstants::default(),
        };
        positive("E23", spec.e23())?;
        Ok(spec)
    }

    /// Target at `omega_1`, middle level `delta` above it, control detuned by `delta_control`.
    pub fn from_detunings(
        omega_1: f64,
        delta: f64,
        delta_control: f64,
        dipole_length: f64,
        area: f64,
        coupling_ratio: f64,
    ) -> Result<Self, AbsorberError> {
        let e12 = omega_1 + delta;
        Self::new(e12, omega_1, e12 - delta_control, dipole_length, area, coupling_ratio)
    }

    /// Example atom: 500 nm photons, target detuning 3e12 1/s, control ten
    /// times further out, dipole length 6 a_B, diffraction-limited beam.
    pub fn optical_example() -> Self {
        Self::optical(3e12, 1.0)
    }

    /// Lambda-scheme example: detuning 3e9 1/s and coupling ratio 0.03.
    pub fn lambda_example() -> Self {
        Self::optical(3e9, 0.03)
    }

    fn optical(delta_per_s: f64, f: f64) -> Self {
        let c = PhysicalConstants::default();
        let lambda = 500e-9;
        let omega = wavelength_to_omega(lambda);
        let delta = delta_per_s * HBAR_EV_S;
        let half = 0.5 * lambda / crate::numerics::units::HBAR_C_EV_M;
        Self::from_detunings(omega, delta, 10.0 * delta, 6.0 * c.bohr_radius, half * half, f).expect("valid example")
    }

    /// Degenerate levels `E12 = E23 = omega_1 = omega_2 = omega` (zero detuning).
    pub fn degenerate(omega: f64, dipole_length: f64, area: f64, coupling_ratio: f64) -> Result<Self, AbsorberError> {
        Self::new(omega, omega, omega, dipole_length, area, coupling_ratio)
    }

    pub fn with_constants(mut self, constants: PhysicalConstants) -> Self {
        self.constants = constants;
        self
    }

    pub fn with_coupling_ratio(mut self, f: f64) -> Result<Self, AbsorberError> {
        self.coupling_ratio = positive("coupling ratio f", f)?;
        Ok(self)
    }

    pub fn with_area(mut self, area: f64) -> Result<Self, AbsorberError> {
        self.area = positive("area", area)?;
        Ok(self)
    }

    pub fn e12(&self) -> f64 {
        self.e12
    }

    pub fn e23(&self) -> f64 {
        self.omega_1 + self.omega_2 - self.e12
    }

    pub fn e13(&self) -> f64 {
        self.omega_1 + self.omega_2
    }

    pub fn omega_1(&self) -> f64 {
        self.omega_1
    }

    pub fn omega_2(&self) -> f64 {
        self.omega_2
    }

    pub fn delta(&self) -> f64 {
        self.e12 - self.omega_1
    }

    pub fn delta_control(&self) -> f64 {
        self.e12 - self.omega_2
    }

    pub fn dipole_length(&self) -> f64 {
        self.dipole_length
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    pub fn coupling_ratio(&self) -> f64 {
        self.coupling_ratio
    }

    pub fn mass(&self) -> f64 {
        self.constants.electron_mass
    }

    pub fn alpha(&self) -> f64 {
        self.constants.alpha
    }
}

/// Coupling magnitudes of the three-level atom to the photon modes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CouplingSet {
    pub g12: f64,
    pub g23: f64,
    /// Upper bound on the direct 1s - 3s two-photon coupling.
    pub g13_bound: f64,
    pub g11: f64,
    /// `g12 g23 / Delta`; infinite at zero detuning.
    pub g_eff: f64,
}

pub fn coupling_constants(spec: &AtomSpec) -> CouplingSet {
    let a = spec.alpha();
    let m = spec.mass();
    let l = spec.dipole_length;
    let four_pi2 = 4.0 * PI * PI;
    let (w1, w2) = (spec.omega_1, spec.omega_2);
    let g12 = spec.coupling_ratio * spec.e12 * (a / (four_pi2 * w1)).sqrt() * l;
    let g23 = spec.e23() * (a / (four_pi2 * w2)).sqrt() * l;
    let g11 = a / (four_pi2 * m * (w1 * w1).sqrt());
    let g13_bound = a / (4.0 * four_pi2 * m) * (w1 + w2).powi(2) * l * l / (w1 * w2).sqrt();
    let delta = spec.delta();
    let g_eff = if delta == 0.0 { f64::INFINITY } else { g12 * g23 / delta.abs() };
    CouplingSet { g12, g23, g13_bound, g11, g_eff }
}

/// Two-photon absorption probability of one atom.
pub fn two_photon_absorption_prob(spec: &AtomSpec) -> Result<f64, AbsorberError> {
    let delta = spec.delta();
    if delta == 0.0 {
        return Err(AbsorberError::ZeroDetuning { name: "Delta" });
    }
    let a = spec.alpha();
    let l4 = spec.dipole_length.powi(4);
    let f2 = spec.coupling_ratio * spec.coupling_ratio;
    Ok(4.0 * a * a / (PI * PI * spec.omega_1 * spec.omega_2)
        * (spec.e12 * spec.e12 * spec.e23() * spec.e23() / (delta * delta))
        * l4
        / (spec.area * spec.area)
        * f2)
}

/// Which scattering channels enter the one-photon loss.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScatteringTerms {
    pub control_photon: bool,
    /// Direct scattering through the `A^2` coupling.
    pub direct: bool,
}

impl ScatteringTerms {
    pub const TARGET_ONLY: ScatteringTerms = ScatteringTerms { control_photon: false, direct: false };
    pub const FULL: ScatteringTerms = ScatteringTerms { control_photon: true, direct: true };
}

fn scattering_bracket(spec: &AtomSpec, delta: f64, direct: bool) -> f64 {
    let f2 = spec.coupling_ratio * spec.coupling_ratio;
    let via_2p = f2 * spec.e12 * spec.e12 / delta;
    if !direct {
        return via_2p;
    }
    let direct = 1.0 / (spec.mass() * spec.dipole_length * spec.dipole_length);
    let b = via_2p - direct;
    // exact cancellation is the destructive-interference point
    if b.abs() <= 1e-12 * via_2p.abs().max(direct) {
        0.0
    } else {
        b
    }
}

/// One-photon scattering probability summed over the requested photons.
pub fn one_photon_scattering_prob(spec: &AtomSpec, terms: ScatteringTerms) -> Result<f64, AbsorberError> {
    let mut detunings = vec![("Delta", spec.delta())];
    if terms.control_photon {
        detunings.push(("Delta_control", spec.delta_control()));
    }
    let mut sum = 0.0;
    for (name, d) in detunings {
        if d == 0.0 {
            return Err(AbsorberError::ZeroDetuning { name });
        }
        sum += scattering_bracket(spec, d, terms.direct).powi(2);
    }
    let a = spec.alpha();
    Ok(8.0 * a * a / (3.0 * PI) * sum * spec.dipole_length.powi(4) / spec.area)
}

/// Closed-form absorption ratio `kappa_0` with direct and control scattering dropped.
pub fn absorption_ratio(spec: &AtomSpec) -> f64 {
    let f2 = spec.coupling_ratio * spec.coupling_ratio;
    3.0 * spec.e23().powi(2) / (2.0 * spec.e12.powi(2) * PI * spec.omega_1 * spec.omega_2 * spec.area) / f2
}

/// `P2 / P1` with the chosen scattering channels.
pub fn absorption_ratio_with(spec: &AtomSpec, terms: ScatteringTerms) -> Result<f64, AbsorberError> {
    let p1 = one_photon_scattering_prob(spec, terms)?;
    if p1 == 0.0 {
        return Err(AbsorberError::UnboundedRatio);
    }
    Ok(two_photon_absorption_prob(spec)? / p1)
}

/// Photon frequency at which one-photon scattering interferes away.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interference {
    pub omega: f64,
    /// Upper spacing required by two-photon resonance at `omega_1 = omega_2 = omega`.
    pub e23: f64,
}

pub fn destructive_interference_frequency(e12: f64, dipole_length: f64, mass: f64) -> Result<Interference, AbsorberError> {
    let x = 2.0 * mass * dipole_length * dipole_length * e12;
    if x > 1.0 {
        return Err(AbsorberError::NoInterference(x));
    }
    let omega = e12 * (1.0 - x).sqrt();
    Ok(Interference { omega, e23: 2.0 * omega - e12 })
}

/// Virtual 2p amplitude under detuned driving.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MiddleLevel {
    pub amplitude: f64,
    /// `max(|g12 A1|, |g23 A2|) / |Delta'|`.
    pub drive_ratio: f64,
    /// Detuning exceeds both drive strengths by at least [`PUMP_SAFETY_MARGIN`].
    pub pump_safe: bool,
}

pub const PUMP_SAFETY_MARGIN: f64 = 10.0;

pub fn middle_level_population(
    g12_a1: f64,
    g23_a2: f64,
    psi_1s: f64,
    psi_3s: f64,
    delta_prime: f64,
) -> Result<MiddleLevel, AbsorberError> {
    if delta_prime == 0.0 {
        return Err(AbsorberError::ZeroDetuning { name: "Delta'" });
    }
    let amplitude = -(g12_a1 * psi_1s + g23_a2 * psi_3s) / delta_prime;
    let drive_ratio = g12_a1.abs().max(g23_a2.abs()) / delta_prime.abs();
    Ok(MiddleLevel { amplitude, drive_ratio, pump_safe: drive_ratio * PUMP_SAFETY_MARGIN <= 1.0 })
}

/// Drive strength `sqrt(4 pi alpha I) l` that the pump detuning must exceed.
pub fn pump_threshold(intensity: f64, dipole_length: f64, alpha: f64) -> f64 {
    (4.0 * PI * alpha * intensity).sqrt() * dipole_length
}
