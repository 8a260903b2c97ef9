use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{AbsorberRates, Branches, Decay, ErrorPair, GateError, GateGeometry, PhotonState};
use crate::numerics::search::golden_section;
use crate::numerics::{mat_power, ComplexMatrix};

/// Entry port of the target photon. The lower port only exists on the three-branch gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InputPort {
    Upper,
    Lower,
}

/// Transfer matrix of one segment with absorber exponent `xi` in the lossy branch.
pub fn segment_matrix(geom: &GateGeometry, xi: Decay) -> ComplexMatrix {
    let (s, c) = geom.epsilon().sin_cos();
    let e = xi.transmission();
    match geom.branches() {
        Branches::Two => ComplexMatrix::from_real2([[c, s], [-e * s, e * c]]),
        Branches::Three => ComplexMatrix::from_real3([
            [c, -s, 0.0],
            [e * c * s, e * c * c, -s],
            [e * s * s, e * c * s, c],
        ]),
    }
}

fn lattice(geom: &GateGeometry, xi: Decay) -> ComplexMatrix {
    mat_power(&segment_matrix(geom, xi), geom.segments() as u64)
}

/// Propagates `input` through all `N` segments.
pub fn propagate(
    geom: &GateGeometry,
    rates: &AbsorberRates,
    control_present: bool,
    input: &PhotonState,
) -> Result<PhotonState, GateError> {
    if input.dim() != geom.dim() {
        return Err(GateError::StateDimension { expected: geom.dim(), got: input.dim() });
    }
    let xi = if control_present { rates.two_photon } else { rates.one_photon };
    let out = lattice(geom, xi).apply(&input.amplitudes)?;
    Ok(PhotonState::new(out))
}

/// Exact error probabilities for a photon entering the upper branch.
pub fn exact_errors(geom: &GateGeometry, rates: &AbsorberRates) -> ErrorPair {
    exact_errors_from(geom, rates, InputPort::Upper).expect("upper port always exists")
}

/// Exact error probabilities for either entry port.
///
/// Without control the photon must leave through the opposite outer branch;
/// with control it must stay in its own. The lower port of the three-branch
/// gate sees the mirror image of the lattice.
pub fn exact_errors_from(geom: &GateGeometry, rates: &AbsorberRates, port: InputPort) -> Result<ErrorPair, GateError> {
    let last = geom.dim() - 1;
    let (start, target) = match port {
        InputPort::Upper => (0, last),
        InputPort::Lower if geom.branches() == Branches::Three => (last, 0),
        InputPort::Lower => return Err(GateError::NoLowerPort),
    };
    let run = |xi: Decay| -> Vec<Complex64> {
        let m = lattice(geom, xi);
        let m = match port {
            InputPort::Upper => m,
            InputPort::Lower => mirror(&m),
        };
        m.apply(&PhotonState::basis(geom.dim(), start).amplitudes).expect("dimension checked")
    };
    let no_control = run(rates.one_photon);
    let control = run(rates.two_photon);
    Ok(ErrorPair {
        one_photon: (1.0 - no_control[target].norm_sqr()).max(0.0),
        two_photon: (1.0 - control[start].norm_sqr()).max(0.0),
    })
}

/// `J m J` with `J` the branch-order reversal.
fn mirror(m: &ComplexMatrix) -> ComplexMatrix {
    let n = m.dim();
    let mut out = *m;
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = m[(n - 1 - i, n - 1 - j)];
        }
    }
    out
}

/// Outcome of re-optimising the beam-splitter angle at fixed rates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EpsilonScan {
    pub default_epsilon: f64,
    pub default_error: f64,
    pub optimal_epsilon: f64,
    pub optimal_error: f64,
    /// `(optimal - default) / default`.
    pub relative_deviation: f64,
}

/// Minimises `max(P1, P2)` over the beam-splitter angle around the default.
pub fn reoptimize_epsilon(geom: &GateGeometry, rates: &AbsorberRates, tol: f64) -> Result<EpsilonScan, GateError> {
    let eps0 = geom.branches().default_epsilon(geom.segments());
    let hi = (1.5 * eps0).min(PI / 2.0 - 1e-12);
    let objective = |eps: f64| {
        let g = GateGeometry::with_epsilon(geom.branches(), geom.segments(), eps).expect("angle inside bracket");
        exact_errors(&g, rates).max()
    };
    let best = golden_section(objective, 0.5 * eps0, hi, tol)?;
    let default_error = exact_errors(&GateGeometry::new(geom.branches(), geom.segments())?, rates).max();
    Ok(EpsilonScan {
        default_epsilon: eps0,
        default_error,
        optimal_epsilon: best.x,
        optimal_error: best.value,
        relative_deviation: (best.x - eps0) / eps0,
    })
}
