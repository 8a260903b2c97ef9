use serde::{Deserialize, Serialize};

use super::EnhancementError;
use crate::numerics::units::AVOGADRO;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Ladder {
    Raise,
    Lower,
}

/// `S` identical emitters sharing `s` symmetric excitations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasispinEnsemble {
    total: u64,
    excitations: u64,
}

impl QuasispinEnsemble {
    pub fn new(total: u64, excitations: u64) -> Result<Self, EnhancementError> {
        if excitations > total {
            return Err(EnhancementError::Excitations { s: excitations, total });
        }
        Ok(Self { total, excitations })
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn excitations(&self) -> u64 {
        self.excitations
    }

    /// Applies a collective ladder operator, returning the coefficient.
    pub fn apply(&self, op: Ladder) -> (f64, Self) {
        let (c, s) = quasispin_apply(op, self.excitations, self.total);
        (c, Self { total: self.total, excitations: s })
    }
}

/// Optically active emitters in a plate of given thickness and area (SI units).
pub fn plate_emitters(thickness_m: f64, area_m2: f64, density_g_cm3: f64, molar_mass_g_mol: f64, active_fraction: f64) -> f64 {
    let volume_cm3 = thickness_m * area_m2 * 1e6;
    AVOGADRO * density_g_cm3 * volume_cm3 / molar_mass_g_mol * active_fraction
}

/// Collective ladder operator on the symmetric state with `s` of `total` excited.
///
/// Off the ends of the ladder the coefficient is 0 and `s` is unchanged.
pub fn quasispin_apply(op: Ladder, s: u64, total: u64) -> (f64, u64) {
    let (sf, tf) = (s as f64, total as f64);
    match op {
        Ladder::Raise if s < total => (((tf - sf) * (sf + 1.0)).sqrt(), s + 1),
        Ladder::Lower if s > 0 && s <= total => (((tf - sf + 1.0) * sf).sqrt(), s - 1),
        _ => (0.0, s),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DickeFactors {
    /// `(S - s)(s + 1)`: gain of two-photon absorption over a single atom.
    pub two_photon_factor: f64,
    /// Expected order `S` of incoherent scattering.
    pub scatter_factor_bound: f64,
}

impl DickeFactors {
    /// Gain in the absorption ratio, `(S - s)(s + 1) / S`.
    pub fn ratio_gain(&self) -> f64 {
        self.two_photon_factor / self.scatter_factor_bound
    }
}

pub fn dicke_enhancement(total: u64, s: u64) -> Result<DickeFactors, EnhancementError> {
    if s > total {
        return Err(EnhancementError::Excitations { s, total });
    }
    let (sf, tf) = (s as f64, total as f64);
    Ok(DickeFactors { two_photon_factor: (tf - sf) * (sf + 1.0), scatter_factor_bound: tf })
}
