//! Error type shared by every module of the crate.

use std::fmt;

/// Errors surfaced by the library.
///
/// The CLI maps `Domain`/`Validation`/`Parse` to exit code 2 and
/// `Coverage`/`Tolerance` to exit code 3.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument violates a documented precondition.
    Domain(String),
    /// A requested range exceeds a configured cap.
    SizeCap { requested: u64, cap: u64 },
    /// Malformed input data (file parsing), with 1-based line number.
    Parse { line: usize, message: String },
    /// Structurally invalid data (e.g. unsorted ordinates).
    Validation(String),
    /// A zero dataset does not certify coverage of the requested height.
    Coverage { requested: f64, available: f64 },
    /// Numerical quadrature or series evaluation failed to meet the
    /// requested tolerance.
    Tolerance(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::SizeCap { requested, cap } => {
                write!(f, "size cap exceeded: requested {requested}, cap {cap}")
            }
            Error::Parse { line, message } => write!(f, "parse error at line {line}: {message}"),
            Error::Validation(msg) => write!(f, "validation error: {msg}"),
            Error::Coverage {
                requested,
                available,
            } => write!(
                f,
                "coverage error: dataset certifies ordinates up to {available}, \
                 but {requested} is required"
            ),
            Error::Tolerance(msg) => write!(f, "tolerance error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
