//! Error type shared by all modules of the crate.

use std::fmt;

/// Errors reported by the library.
///
/// Almost everything here is a precondition failure on a mathematical domain
/// (inverse of zero, even modulus for a Jacobi symbol, group too large for dense
/// simulation, ...). The one genuinely runtime-dependent case is `Unconverged`,
/// raised by randomized algorithms that give up after their retry budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    Domain(String),
    /// A size cap for dense simulation was exceeded.
    TooLarge(String),
    /// A randomized algorithm exhausted its retry budget without an answer.
    Unconverged(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::TooLarge(msg) => write!(f, "size limit exceeded: {msg}"),
            Error::Unconverged(msg) => write!(f, "did not converge: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

/// Shorthand for building a `Domain` error from format arguments.
macro_rules! domain_err {
    ($($arg:tt)*) => {
        $crate::error::Error::Domain(format!($($arg)*))
    };
}
pub(crate) use domain_err;
