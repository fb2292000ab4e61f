//! Error type shared across the crate.

use std::fmt;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while building models or running the solvers.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A routine was asked to work in a dimension it does not support.
    UnsupportedDimension { dim: usize, max: usize },
    /// Geometric input is degenerate (collinear points, empty set, ...).
    Degenerate(String),
    /// A numeric argument is outside the routine's domain (t <= 0, nu <= 0, ...).
    Domain(String),
    /// A model failed its construction-time validation.
    InvalidModel(String),
    /// A grid search ended on the boundary or could not bracket a minimizer.
    GridResolution(String),
    /// An event scan hit a non-generic stretch (a tie that is not isolated in time).
    NonGenericInterval { t_lo: f64, t_hi: f64, what: String },
    /// A scenario file failed to parse or validate; `path` is the offending key.
    InvalidConfig { path: String, message: String },
    /// Writing run artifacts failed.
    Io(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UnsupportedDimension { dim, max } => {
                write!(f, "unsupported dimension {dim} (supported up to {max})")
            }
            Error::Degenerate(msg) => write!(f, "degenerate configuration: {msg}"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::InvalidModel(msg) => write!(f, "invalid model: {msg}"),
            Error::GridResolution(msg) => write!(f, "grid resolution: {msg}"),
            Error::NonGenericInterval { t_lo, t_hi, what } => {
                write!(f, "non-generic interval [{t_lo}, {t_hi}]: {what}")
            }
            Error::InvalidConfig { path, message } => {
                write!(f, "invalid config at `{path}`: {message}")
            }
            Error::Io(msg) => write!(f, "io error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
