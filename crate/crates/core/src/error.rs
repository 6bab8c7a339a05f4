use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,

    #[error("degree {degree} exceeds the supported cap of {cap}")]
    DegreeCap { degree: usize, cap: usize },

    /// A predicate could not be certified at the current working precision.
    #[error("indeterminate at {bits} bits: {what}")]
    Indeterminate { what: String, bits: u32 },

    /// Precision escalation hit the configured ceiling.
    #[error("precision ceiling of {ceiling} bits exhausted: {what}")]
    PrecisionExhausted { what: String, ceiling: u32 },

    #[error("degenerate input: {0}")]
    Degenerate(String),
}

impl Error {
    pub fn exhausted(what: impl Into<String>, ceiling: u32) -> Self {
        Error::PrecisionExhausted { what: what.into(), ceiling }
    }

    pub fn invalid(what: impl Into<String>) -> Self {
        Error::InvalidInput(what.into())
    }

    pub fn is_precision(&self) -> bool {
        matches!(self, Error::PrecisionExhausted { .. } | Error::Indeterminate { .. })
    }
}
