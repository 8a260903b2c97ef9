//! Physical constants and unit conversion.
//!
//! Internally everything is in natural units with hbar = c = eps0 = 1: energies
//! and angular frequencies in eV, lengths in 1/eV, areas in 1/eV^2 and
//! intensities in eV^4. "Hz" is read as an angular frequency in 1/s.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::NumericsError;

pub const FINE_STRUCTURE: f64 = 7.297_352_569_3e-3;
/// Reduced Planck constant in eV s.
pub const HBAR_EV_S: f64 = 6.582_119_569e-16;
/// hbar * c in eV m.
pub const HBAR_C_EV_M: f64 = 1.973_269_804e-7;
pub const SPEED_OF_LIGHT_M_S: f64 = 299_792_458.0;
pub const ELECTRON_MASS_EV: f64 = 510_998.95;
pub const BOHR_RADIUS_M: f64 = 5.291_772_109_03e-11;
pub const ELEMENTARY_CHARGE_C: f64 = 1.602_176_634e-19;
pub const AVOGADRO: f64 = 6.022_140_76e23;

/// Constant set threaded through the absorber model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    pub alpha: f64,
    /// Bohr radius in natural units (1/eV).
    pub bohr_radius: f64,
    /// Electron mass in eV.
    pub electron_mass: f64,
}

impl PhysicalConstants {
    pub const CODATA_2018: PhysicalConstants = PhysicalConstants {
        alpha: FINE_STRUCTURE,
        bohr_radius: BOHR_RADIUS_M / HBAR_C_EV_M,
        electron_mass: ELECTRON_MASS_EV,
    };
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::CODATA_2018
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UnitKind {
    Energy,
    AngularFrequency,
    Length,
    Area,
    Intensity,
    Dimensionless,
}

impl fmt::Display for UnitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            UnitKind::Energy => "energy",
            UnitKind::AngularFrequency => "angular-frequency",
            UnitKind::Length => "length",
            UnitKind::Area => "area",
            UnitKind::Intensity => "intensity",
            UnitKind::Dimensionless => "dimensionless",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Unit {
    ElectronVolt,
    /// Angular frequency in 1/s; accepts the labels `rad/s`, `s^-1` and `Hz`.
    PerSecond,
    Meter,
    Nanometer,
    Bohr,
    InverseElectronVolt,
    SquareMeter,
    SquareCentimeter,
    InverseElectronVoltSquared,
    WattPerSquareCentimeter,
    ElectronVoltFourth,
    Dimensionless,
}

impl Unit {
    pub const ALL: [Unit; 12] = [
        Unit::ElectronVolt,
        Unit::PerSecond,
        Unit::Meter,
        Unit::Nanometer,
        Unit::Bohr,
        Unit::InverseElectronVolt,
        Unit::SquareMeter,
        Unit::SquareCentimeter,
        Unit::InverseElectronVoltSquared,
        Unit::WattPerSquareCentimeter,
        Unit::ElectronVoltFourth,
        Unit::Dimensionless,
    ];

    pub fn kind(self) -> UnitKind {
        match self {
            Unit::ElectronVolt => UnitKind::Energy,
            Unit::PerSecond => UnitKind::AngularFrequency,
            Unit::Meter | Unit::Nanometer | Unit::Bohr | Unit::InverseElectronVolt => UnitKind::Length,
            Unit::SquareMeter | Unit::SquareCentimeter | Unit::InverseElectronVoltSquared => UnitKind::Area,
            Unit::WattPerSquareCentimeter | Unit::ElectronVoltFourth => UnitKind::Intensity,
            Unit::Dimensionless => UnitKind::Dimensionless,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Unit::ElectronVolt => "eV",
            Unit::PerSecond => "s^-1",
            Unit::Meter => "m",
            Unit::Nanometer => "nm",
            Unit::Bohr => "a_B",
            Unit::InverseElectronVolt => "eV^-1",
            Unit::SquareMeter => "m^2",
            Unit::SquareCentimeter => "cm^2",
            Unit::InverseElectronVoltSquared => "eV^-2",
            Unit::WattPerSquareCentimeter => "W/cm^2",
            Unit::ElectronVoltFourth => "eV^4",
            Unit::Dimensionless => "dimensionless",
        }
    }

    /// Multiplier taking a value in this unit to natural units.
    fn to_natural(self) -> f64 {
        let cm = 1e-2 / HBAR_C_EV_M;
        match self {
            Unit::ElectronVolt | Unit::InverseElectronVolt => 1.0,
            Unit::PerSecond => HBAR_EV_S,
            Unit::Meter => 1.0 / HBAR_C_EV_M,
            Unit::Nanometer => 1e-9 / HBAR_C_EV_M,
            Unit::Bohr => BOHR_RADIUS_M / HBAR_C_EV_M,
            Unit::SquareMeter => 1.0 / (HBAR_C_EV_M * HBAR_C_EV_M),
            Unit::SquareCentimeter => cm * cm,
            Unit::InverseElectronVoltSquared => 1.0,
            // 1 W = (1/e) eV per second and 1/s = hbar eV
            Unit::WattPerSquareCentimeter => HBAR_EV_S / ELEMENTARY_CHARGE_C / (cm * cm),
            Unit::ElectronVoltFourth => 1.0,
            Unit::Dimensionless => 1.0,
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Unit {
    type Err = NumericsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unit = match s.trim() {
            "eV" => Unit::ElectronVolt,
            "rad/s" | "s^-1" | "1/s" | "Hz" => Unit::PerSecond,
            "m" => Unit::Meter,
            "nm" => Unit::Nanometer,
            "a_B" | "bohr" => Unit::Bohr,
            "eV^-1" | "1/eV" => Unit::InverseElectronVolt,
            "m^2" => Unit::SquareMeter,
            "cm^2" => Unit::SquareCentimeter,
            "eV^-2" => Unit::InverseElectronVoltSquared,
            "W/cm^2" => Unit::WattPerSquareCentimeter,
            "eV^4" => Unit::ElectronVoltFourth,
            "" | "1" | "dimensionless" => Unit::Dimensionless,
            other => return Err(NumericsError::UnknownUnit(other.to_string())),
        };
        Ok(unit)
    }
}

impl Serialize for Unit {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

impl<'de> Deserialize<'de> for Unit {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A value tagged with its unit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quantity {
    pub value: f64,
    pub unit: Unit,
}

impl Quantity {
    pub fn new(value: f64, unit: Unit) -> Self {
        Self { value, unit }
    }

    pub fn energy_ev(value: f64) -> Self {
        Self::new(value, Unit::ElectronVolt)
    }

    pub fn per_second(value: f64) -> Self {
        Self::new(value, Unit::PerSecond)
    }

    pub fn dimensionless(value: f64) -> Self {
        Self::new(value, Unit::Dimensionless)
    }

    pub fn kind(&self) -> UnitKind {
        self.unit.kind()
    }

    /// Value in natural units (eV, 1/eV, 1/eV^2, eV^4).
    pub fn natural(&self) -> f64 {
        self.value * self.unit.to_natural()
    }

    pub fn to(&self, target: Unit) -> Result<Quantity, NumericsError> {
        convert(*self, target)
    }

    pub fn checked_add(&self, rhs: &Quantity) -> Result<Quantity, NumericsError> {
        let rhs = self.same_kind(rhs)?;
        Ok(Quantity::new(self.value + rhs.value, self.unit))
    }

    pub fn checked_sub(&self, rhs: &Quantity) -> Result<Quantity, NumericsError> {
        let rhs = self.same_kind(rhs)?;
        Ok(Quantity::new(self.value - rhs.value, self.unit))
    }

    pub fn scaled(&self, k: f64) -> Quantity {
        Quantity::new(self.value * k, self.unit)
    }

    fn same_kind(&self, rhs: &Quantity) -> Result<Quantity, NumericsError> {
        if self.kind() != rhs.kind() {
            return Err(NumericsError::KindMismatch { left: self.kind(), right: rhs.kind() });
        }
        convert(*rhs, self.unit)
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.value, self.unit)
    }
}

fn spectral(kind: UnitKind) -> bool {
    matches!(kind, UnitKind::Energy | UnitKind::AngularFrequency)
}

/// Converts `q` into `target`.
///
/// Energy and angular frequency convert through hbar. A length converts to
/// either of them as a wavelength, `omega = 2 pi c / lambda`, and back.
pub fn convert(q: Quantity, target: Unit) -> Result<Quantity, NumericsError> {
    let (from, to) = (q.kind(), target.kind());
    let natural = q.natural();
    let value = if from == to || (spectral(from) && spectral(to)) {
        natural / target.to_natural()
    } else if from == UnitKind::Length && spectral(to) {
        2.0 * PI / natural / target.to_natural()
    } else if spectral(from) && to == UnitKind::Length {
        2.0 * PI / natural / target.to_natural()
    } else {
        return Err(NumericsError::IncompatibleUnits { from: q.unit, to: target });
    };
    Ok(Quantity::new(value, target))
}

/// Photon angular frequency (natural units, eV) for a wavelength given in metres.
pub fn wavelength_to_omega(lambda_m: f64) -> f64 {
    2.0 * PI * HBAR_C_EV_M / lambda_m
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn alpha_value() {
        assert!((PhysicalConstants::default().alpha - 7.2973525e-3).abs() < 1e-9);
    }

    #[test]
    fn wavelength_500nm() {
        let w = convert(Quantity::new(500.0, Unit::Nanometer), Unit::PerSecond).unwrap();
        let oracle = 2.0 * PI * SPEED_OF_LIGHT_M_S / 500e-9;
        assert!(rel(w.value, oracle) < 1e-9, "{}", w.value);
        assert!(rel(w.value, 3.7673e15) < 1e-4);
    }

    #[test]
    fn hz_reading_matches_ev() {
        let e = convert(Quantity::per_second(1e14), Unit::ElectronVolt).unwrap();
        assert!((e.value - 0.0658).abs() < 1e-4);
        assert_eq!(Unit::from_str("Hz").unwrap(), Unit::PerSecond);
    }

    #[test]
    fn identity_conversion() {
        let q = Quantity::energy_ev(1.2345);
        assert_eq!(convert(q, Unit::ElectronVolt).unwrap().value, 1.2345);
    }

    #[test]
    fn intensity_factor() {
        let i = convert(Quantity::new(1.0, Unit::WattPerSquareCentimeter), Unit::ElectronVoltFourth).unwrap();
        assert!(rel(i.value, 1.5996e-6) < 1e-4);
    }

    #[test]
    fn incompatible_rejected() {
        assert!(convert(Quantity::new(1.0, Unit::SquareMeter), Unit::ElectronVolt).is_err());
        assert!(convert(Quantity::dimensionless(1.0), Unit::Meter).is_err());
        let a = Quantity::energy_ev(1.0);
        assert!(a.checked_add(&Quantity::new(1.0, Unit::Meter)).is_err());
        assert!(a.checked_sub(&Quantity::per_second(1e14)).is_err());
        let b = Quantity::new(2.0, Unit::Nanometer).checked_add(&Quantity::new(1e-9, Unit::Meter)).unwrap();
        assert!(rel(b.value, 3.0) < 1e-12);
    }

    #[test]
    fn labels_round_trip() {
        for u in Unit::ALL {
            assert_eq!(u.label().parse::<Unit>().unwrap(), u);
        }
        assert!("furlong".parse::<Unit>().is_err());
    }

    proptest! {
        #[test]
        fn round_trip_same_kind(v in 1e-6f64..1e6, i in 0usize..12, j in 0usize..12) {
            let (a, b) = (Unit::ALL[i], Unit::ALL[j]);
            prop_assume!(a.kind() == b.kind());
            let q = Quantity::new(v, a);
            let back = q.to(b).unwrap().to(a).unwrap();
            prop_assert!(rel(back.value, v) < 1e-12);
        }

        #[test]
        fn nm_via_frequency_equals_direct(lambda in 100.0f64..1e5) {
            let q = Quantity::new(lambda, Unit::Nanometer);
            let via = q.to(Unit::PerSecond).unwrap().to(Unit::ElectronVolt).unwrap();
            let direct = q.to(Unit::ElectronVolt).unwrap();
            prop_assert!(rel(via.value, direct.value) < 1e-12);
            let back = direct.to(Unit::Nanometer).unwrap();
            prop_assert!(rel(back.value, lambda) < 1e-12);
        }
    }
}
