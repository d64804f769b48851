//! Error types shared across the simulator.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument fell outside an operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A configuration value failed validation.
    #[error("config error: {0}")]
    Config(String),

    /// The two-ray interference term vanished: the direct and reflected rays
    /// cancel at this exact distance and the path loss is unbounded.
    #[error("two-ray destructive null at d = {distance_m} m (|sin| = {sine_magnitude:.3e})")]
    TwoRayNull {
        distance_m: f64,
        sine_magnitude: f64,
    },

    /// A Monte Carlo run failed even after the deterministic resample.
    #[error("run {run_index} aborted for combo {combo}: {source}")]
    RunAborted {
        combo: String,
        run_index: u64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
