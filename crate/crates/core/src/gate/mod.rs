//! Transfer-matrix models of the two- and three-branch Zeno gates.

mod asymptotic;
mod closed_form;
mod lattice;

use std::f64::consts::{PI, SQRT_2};
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numerics::NumericsError;

pub use asymptotic::{
    asymptotic_errors, control_loss_adjusted, control_loss_worst_case, franson_errors, franson_required_kappa,
    optimal_rates, required_kappa, zeno_demo_survival, FransonErrors, OptimalRates, Order,
};
pub use closed_form::{closed_form_two_branch, first_order_column, ClosedFormFactors};
pub use lattice::{
    exact_errors, exact_errors_from, propagate, reoptimize_epsilon, segment_matrix, EpsilonScan, InputPort,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GateError {
    #[error("decay exponent must be a non-negative number, got {0}")]
    NegativeDecay(f64),
    #[error("segment count must be at least 1")]
    ZeroSegments,
    #[error("beam-splitter angle must lie in (0, pi/2), got {0}")]
    Epsilon(f64),
    #[error("input state has dimension {got}, gate has {expected} branches")]
    StateDimension { expected: usize, got: usize },
    #[error("closed form has degenerate roots (|r| = {0:.3e}); use the matrix power instead")]
    DegenerateRoots(f64),
    #[error("rate ratio kappa must be positive, got {0}")]
    Kappa(f64),
    #[error("error threshold must lie in (0, 1), got {0}")]
    Threshold(f64),
    #[error("the lower input port exists only for the three-branch gate")]
    NoLowerPort,
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branches {
    Two,
    Three,
}

impl Branches {
    pub fn count(self) -> usize {
        match self {
            Branches::Two => 2,
            Branches::Three => 3,
        }
    }

    pub fn from_count(n: usize) -> Option<Self> {
        match n {
            2 => Some(Branches::Two),
            3 => Some(Branches::Three),
            _ => None,
        }
    }

    /// Beam-splitter angle giving full transfer in `n` lossless segments.
    pub fn default_epsilon(self, n: u32) -> f64 {
        match self {
            Branches::Two => PI / (2.0 * n as f64),
            Branches::Three => PI / (SQRT_2 * n as f64),
        }
    }
}

impl fmt::Display for Branches {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.count())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GateGeometry {
    branches: Branches,
    segments: u32,
    epsilon: f64,
}

impl GateGeometry {
    /// Geometry with the default angle for the branch count.
    pub fn new(branches: Branches, segments: u32) -> Result<Self, GateError> {
        if segments == 0 {
            return Err(GateError::ZeroSegments);
        }
        let epsilon = branches.default_epsilon(segments);
        Self::with_epsilon(branches, segments, epsilon)
    }

    pub fn with_epsilon(branches: Branches, segments: u32, epsilon: f64) -> Result<Self, GateError> {
        if segments == 0 {
            return Err(GateError::ZeroSegments);
        }
        // N = 1 with the three-branch default sits above pi/2; allow the closed bound there
        if !(epsilon > 0.0 && epsilon <= PI / SQRT_2) {
            return Err(GateError::Epsilon(epsilon));
        }
        if epsilon >= PI / 2.0 && !(segments == 1 && epsilon == branches.default_epsilon(1)) {
            return Err(GateError::Epsilon(epsilon));
        }
        Ok(Self { branches, segments, epsilon })
    }

    pub fn branches(&self) -> Branches {
        self.branches
    }

    pub fn segments(&self) -> u32 {
        self.segments
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn dim(&self) -> usize {
        self.branches.count()
    }
}

/// Per-segment amplitude decay exponent; `Perfect` is an infinitely strong absorber.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Decay {
    Finite(f64),
    Perfect,
}

impl Decay {
    /// Accepts any `xi >= 0`; `+inf` becomes `Perfect`.
    pub fn new(xi: f64) -> Result<Self, GateError> {
        if xi.is_nan() || xi < 0.0 {
            Err(GateError::NegativeDecay(xi))
        } else if xi.is_infinite() {
            Ok(Decay::Perfect)
        } else {
            Ok(Decay::Finite(xi))
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Decay::Finite(x) => x,
            Decay::Perfect => f64::INFINITY,
        }
    }

    /// Amplitude transmission `exp(-xi)`.
    pub fn transmission(self) -> f64 {
        match self {
            Decay::Finite(x) => (-x).exp(),
            Decay::Perfect => 0.0,
        }
    }

    pub fn is_perfect(self) -> bool {
        matches!(self, Decay::Perfect)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AbsorberRates {
    pub one_photon: Decay,
    pub two_photon: Decay,
    pub control: Decay,
}

impl AbsorberRates {
    pub fn new(xi_1: f64, xi_2: f64) -> Result<Self, GateError> {
        Self::with_control(xi_1, xi_2, 0.0)
    }

    pub fn with_control(xi_1: f64, xi_2: f64, xi_c: f64) -> Result<Self, GateError> {
        Ok(Self { one_photon: Decay::new(xi_1)?, two_photon: Decay::new(xi_2)?, control: Decay::new(xi_c)? })
    }

    /// Rates with a given ratio at two-photon exponent `xi_2`.
    pub fn from_kappa(kappa: f64, xi_2: f64) -> Result<Self, GateError> {
        if !(kappa > 0.0) {
            return Err(GateError::Kappa(kappa));
        }
        Self::new(xi_2 / kappa, xi_2)
    }

    pub fn xi_1(&self) -> f64 {
        self.one_photon.value()
    }

    pub fn xi_2(&self) -> f64 {
        self.two_photon.value()
    }

    pub fn xi_c(&self) -> f64 {
        self.control.value()
    }

    /// `xi_2 / xi_1`, defined for a finite, non-zero one-photon exponent.
    pub fn kappa(&self) -> Option<f64> {
        match self.one_photon {
            Decay::Finite(x) if x > 0.0 => Some(self.xi_2() / x),
            _ => None,
        }
    }
}

/// Target-photon amplitudes across the branches.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhotonState {
    pub amplitudes: Vec<Complex64>,
}

impl PhotonState {
    pub fn new(amplitudes: Vec<Complex64>) -> Self {
        Self { amplitudes }
    }

    /// Photon fully in branch `index`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn probability(&self, branch: usize) -> f64 {
        self.amplitudes[branch].norm_sqr()
    }
}

/// One-photon (no control) and two-photon (control present) error probabilities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorPair {
    pub one_photon: f64,
    pub two_photon: f64,
}

impl ErrorPair {
    pub fn max(&self) -> f64 {
        self.one_photon.max(self.two_photon)
    }
}
