//! Error type shared by the simulation crates.

use thiserror::Error;

/// Errors produced by validation, integration, and analysis routines.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// Level energies do not satisfy E_b < E_c < E_a < E_d.
    #[error("level scheme violates E_b < E_c < E_a < E_d: \
             E_a={e_a:e}, E_b={e_b:e}, E_c={e_c:e}, E_d={e_d:e}")]
    LevelOrdering { e_a: f64, e_b: f64, e_c: f64, e_d: f64 },

    /// A quantity that must be strictly positive (or finite) is not.
    #[error("parameter `{name}` must satisfy {constraint}, got {value:e}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },

    /// Time step rejected by the atomic integrator.
    #[error("time step must be positive, got {0:e}")]
    NonPositiveStep(f64),

    /// Single-step trace drift beyond the step-size diagnostic threshold.
    #[error("trace drifted by {drift:e} in one step at t={t:e}; \
             the step size does not resolve the dynamics")]
    TraceDrift { drift: f64, t: f64 },

    /// The integrated signal envelope acquired a non-negligible imaginary part.
    #[error("residual imaginary part {residual:e} of the channel-{channel} envelope \
             exceeds {limit:e}; resonant phase structure broke down")]
    PhaseStructure {
        channel: u8,
        residual: f64,
        limit: f64,
    },

    /// A non-finite number appeared during co-simulation.
    #[error("non-finite value at z index {iz}, window time t={t:e}")]
    NonFinite { iz: usize, t: f64 },

    /// Adiabatic coherence relation requested with a vanishing control coupling.
    #[error("adiabatic relation inapplicable: control coupling is zero")]
    ZeroControl,

    /// Mismatch diagnostics requested where no coherence is stored.
    #[error("no stored coherence: |sigma_bc| = {0:e} is below 1e-15")]
    NoStoredCoherence(f64),

    /// Peak detection on an empty series.
    #[error("cannot detect peaks in an empty series")]
    EmptySeries,

    /// Control events are not strictly ordered or do not alternate.
    #[error("switch events must be strictly time-ordered and alternate on/off \
             (offending event at t={0:e})")]
    BadEventSequence(f64),

    /// The configured horizon ends before a scheduled event has played out.
    #[error("horizon {horizon:e} truncates the schedule: needs at least {required:e} \
             (last event plus one pulse length)")]
    HorizonTruncatesEvent { horizon: f64, required: f64 },

    /// Energy split requested but nothing was released.
    #[error("nothing released: schedule has no switch-on event after storage")]
    NothingReleased,
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
