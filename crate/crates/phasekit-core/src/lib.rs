//! Numerical core for phase-shift covariant observables on truncated
//! number spaces.
//!
//! A covariant phase observable is determined by its phase matrix
//! `c[n][m]` (unit diagonal, positive semidefinite in every leading
//! block). This crate builds the associated effect operators on a
//! `D`-dimensional number basis, decomposes them, and derives the
//! quantities of interest: operator infima against number projections,
//! phase densities and their Fourier coefficients, circular minimum
//! variance, commutation structure, and norm/value scans.
//!
//! The crate is `no_std` (with `alloc`); all I/O, serialization glue
//! and the experiment runner live in the companion `phasekit` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

pub mod arcs;
pub mod cmatrix;
pub mod commute;
pub mod effects;
pub mod eigen;
pub mod error;
pub mod family;
pub mod scans;
pub mod special;
pub mod stats;

pub use arcs::ArcSet;
pub use cmatrix::{ComplexMatrix, StateVector};
pub use commute::ComReport;
pub use effects::{Effect, MixtureBound};
pub use eigen::HermitianEigen;
pub use error::{CoreError, Result};
pub use family::{PhaseFamily, PhaseSequence, StructureReport, TailRule};
pub use scans::{NormScanRow, ValueCompRow, VarianceReport};
pub use stats::{MinVariance, PhaseDistribution};

/// Complex double-precision scalar used throughout.
pub type C64 = num_complex::Complex64;
