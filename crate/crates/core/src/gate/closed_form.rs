use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{Decay, GateError};
use crate::numerics::ComplexMatrix;

const DEGENERATE_ROOT: f64 = 1e-9;

/// Abbreviations of the two-branch eigenvalue problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormFactors {
    pub r: Complex64,
    pub alpha_plus: Complex64,
    pub alpha_minus: Complex64,
    pub beta_plus: Complex64,
    pub beta_minus: Complex64,
}

impl ClosedFormFactors {
    pub fn new(epsilon: f64, xi: Decay) -> Self {
        let e = xi.transmission();
        let c = epsilon.cos();
        let disc = (e + 1.0).powi(2) * c * c - 4.0 * e;
        let r = Complex64::new(disc, 0.0).sqrt();
        let a = Complex64::new((e + 1.0) * c, 0.0);
        let b = Complex64::new((e - 1.0) * c, 0.0);
        Self { r, alpha_plus: a + r, alpha_minus: a - r, beta_plus: b + r, beta_minus: b - r }
    }
}

/// `M^N` of the two-branch segment from its eigen-decomposition.
pub fn closed_form_two_branch(epsilon: f64, xi: Decay, n: u32) -> Result<ComplexMatrix, GateError> {
    let f = ClosedFormFactors::new(epsilon, xi);
    if f.r.norm() < DEGENERATE_ROOT {
        return Err(GateError::DegenerateRoots(f.r.norm()));
    }
    let e = xi.transmission();
    let s = Complex64::new(epsilon.sin(), 0.0);
    // (alpha/2)^N stays bounded where alpha^N / 2^N would overflow
    let ap = (f.alpha_plus * 0.5).powu(n);
    let am = (f.alpha_minus * 0.5).powu(n);
    let r = f.r;
    Ok(ComplexMatrix::from_rows2([
        [(f.beta_plus * am - f.beta_minus * ap) / (2.0 * r), (ap - am) * s / r],
        [(am - ap) * e * s / r, (f.beta_plus * ap - f.beta_minus * am) / (2.0 * r)],
    ]))
}

/// Output column for input `(1, 0)` to first order in small `xi`.
pub fn first_order_column(epsilon: f64, xi: f64, n: u32) -> [f64; 2] {
    let nf = n as f64;
    let ne = nf * epsilon;
    let upper = ne.cos() * (1.0 - 0.5 * xi * (nf - ne.tan() / epsilon.tan()));
    let lower = -ne.sin() * (1.0 - 0.5 * xi * (nf + 1.0));
    [upper, lower]
}
