use thiserror::Error;

/// Every failure the library reports. The variants map one-to-one onto the
/// CLI exit-code classes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input: an object violates its structural invariants.
    #[error("validation error: {0}")]
    Validation(String),
    /// A generator or operation was called with parameters outside its domain.
    #[error("parameter error: {0}")]
    Parameter(String),
    /// The input is well formed but outside what the construction supports.
    #[error("unsupported instance: {0}")]
    Unsupported(String),
    /// A size guard tripped (materialization cap, enumeration guard).
    #[error("size limit exceeded: {0}")]
    Size(String),
    /// A numeric argument lies outside the domain of a formula.
    #[error("domain error: {0}")]
    Domain(String),
    /// An internal consistency check failed. Always a bug.
    #[error("algorithm invariant violated: {0}")]
    AlgorithmInvariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! ensure {
    ($cond:expr, $variant:ident, $($fmt:tt)+) => {
        if !$cond {
            return Err($crate::error::Error::$variant(format!($($fmt)+)));
        }
    };
}
pub(crate) use ensure;
