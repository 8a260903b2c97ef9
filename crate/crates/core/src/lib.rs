//! Simulation and design of quantum-Zeno two-photon gates.
//!
//! The target photon walks an `N`-segment beam-splitter lattice whose middle
//! (or lower) branch holds a two-photon absorber. [`gate`] propagates amplitudes
//! and evaluates error probabilities, [`absorber`] models a three-level atom as
//! the absorbing medium, [`enhancement`] quantifies the repeated-pass and
//! collective-excitation boosts, and [`design`] searches for feasible
//! `(N, kappa)` gate designs.

pub mod absorber;
pub mod design;
pub mod enhancement;
pub mod gate;
pub mod numerics;

pub use absorber::{AtomSpec, CouplingSet};
pub use design::{DesignPoint, SearchConfig, Strategy};
pub use gate::{AbsorberRates, Branches, Decay, ErrorPair, GateGeometry, PhotonState};
pub use numerics::{mat_power, ComplexMatrix, PhysicalConstants, Quantity, Unit, UnitKind};
