//! Error type shared by every module of the crate.

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Annulus radii that do not describe a valid deployment region.
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    /// The adaptive integrator exhausted its subdivision budget. The best
    /// estimate and the achieved error bound are reported so callers can
    /// decide whether the result is still usable.
    #[error(
        "quadrature did not converge: best estimate {estimate}, achieved error bound {error_bound}"
    )]
    NonConvergence { estimate: f64, error_bound: f64 },

    /// A parameter combination the implementation deliberately rejects.
    #[error("unsupported configuration: {0}")]
    UnsupportedConfiguration(String),

    /// Too few raw or conditioned samples to produce the requested estimate.
    #[error("insufficient samples: needed {needed}, got {got}")]
    InsufficientSamples { needed: usize, got: usize },

    /// A quantity violated a bound it must satisfy by construction,
    /// indicating a numerical failure rather than a caller mistake.
    #[error("internal consistency violation in {context}: value {value}")]
    InternalConsistency { context: &'static str, value: f64 },

    /// Malformed or contradictory run configuration (CLI front end).
    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
