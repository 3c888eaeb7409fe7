use alloc::string::String;
use core::fmt;

/// Failure modes shared by every operation in the crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Malformed or inconsistent arguments.
    Input(String),
    /// Arguments are well formed but outside the mathematical domain (critical level, k = -2, ...).
    Domain(String),
    /// A table or enumeration would have to exceed its declared cutoff.
    Cutoff { what: String, limit: i64 },
    /// The requested algebra or Cartan kind is not handled.
    Unsupported(String),
    /// The deformed Shapovalov determinant vanishes identically, so the filtration is not defined.
    Degenerate(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Input(m) => write!(f, "input error: {m}"),
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::Cutoff { what, limit } => write!(f, "cutoff exceeded: {what} (limit {limit})"),
            Error::Unsupported(m) => write!(f, "unsupported: {m}"),
            Error::Degenerate(m) => write!(f, "degenerate filtration: {m}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
