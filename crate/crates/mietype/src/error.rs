use std::fmt;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// The Coulombic coupling must be positive for bound states to exist.
    NonPositiveCoupling(f64),
    /// Reduced mass and the action scale must both be positive.
    NonPositiveMass { name: &'static str, value: f64 },
    /// An argument fell outside the domain of the requested operation.
    Domain(String),
    /// The channel's centrifugal radicand is non-positive: no normalizable
    /// bound state exists for this combination of dimension, angular
    /// momentum and inverse-square strength.
    UnphysicalChannel { radicand: f64 },
    /// A named precondition of a specialized entry point was violated.
    Precondition(String),
    /// An iterative numerical routine failed to converge.
    Convergence(String),
    /// The requested eigenstate is not bound or not resolvable on the grid.
    Resolution(String),
    /// Ladder operations require a state that belongs to a fixed-decay-rate
    /// family (`epsilon_override` set).
    Family(String),
    /// An evaluation grid was empty.
    EmptyGrid,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonPositiveCoupling(a) => {
                write!(f, "coupling A must be positive, got {a}")
            }
            Error::NonPositiveMass { name, value } => {
                write!(f, "{name} must be positive, got {value}")
            }
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::UnphysicalChannel { radicand } => write!(
                f,
                "unphysical channel: centrifugal radicand {radicand} is not positive"
            ),
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::Convergence(msg) => write!(f, "failed to converge: {msg}"),
            Error::Resolution(msg) => write!(f, "state not resolvable: {msg}"),
            Error::Family(msg) => write!(f, "fixed-epsilon family required: {msg}"),
            Error::EmptyGrid => write!(f, "evaluation grid is empty"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
