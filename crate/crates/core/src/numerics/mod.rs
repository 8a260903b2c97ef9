//! Small complex matrices, constants, units and 1-D searches.

mod matrix;
pub mod search;
pub mod units;

use thiserror::Error;

pub use matrix::{mat_power, ComplexMatrix};
pub use units::{convert, PhysicalConstants, Quantity, Unit, UnitKind};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("matrix dimension must be 2 or 3, got {0}")]
    Dimension(usize),
    #[error("expected 4 or 9 matrix entries, got {0}")]
    EntryCount(usize),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("unknown unit label `{0}`")]
    UnknownUnit(String),
    #[error("cannot convert {from} to {to}")]
    IncompatibleUnits { from: Unit, to: Unit },
    #[error("arithmetic between {left} and {right} quantities")]
    KindMismatch { left: UnitKind, right: UnitKind },
    #[error("invalid search bracket [{lo}, {hi}]")]
    Bracket { lo: f64, hi: f64 },
}
