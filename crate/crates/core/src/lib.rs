//! Deterministic Maxwell-Bloch simulator for pulse storage, frequency
//! conversion, and controlled multi-pulse release in a double-Λ
//! four-level atomic medium.
//!
//! The crate couples the single-atom density-matrix evolution
//! ([`bloch`]) to one-way signal-field propagation ([`field`]) in the
//! moving window frame t′ = t − z/c, drives it with sine-square probe
//! pulses and tanh-switched control fields ([`pulses`]), and analyses
//! the results with the dark-state-polariton toolbox ([`diagnostics`]).
//! End-to-end experiments are wired up in [`scenario`].
//!
//! All quantities are in Hartree atomic units (see [`model`]).

pub mod bloch;
pub mod diagnostics;
pub mod error;
pub mod model;
pub mod pulses;

pub use bloch::{liouville_rhs, step_atoms, DensityMatrix, Level, LocalFields};
pub use error::{Error, Result};
pub use model::{derive_dipole, derive_frequencies, paper_medium, MediumSpec};
pub use pulses::{control_value, probe_envelope, Drive, PulseSchedule};
