use thiserror::Error;

/// Broad category of a failure, used by front ends to choose exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Malformed input text or arguments.
    Usage,
    /// Well-formed input that violates a mathematical precondition.
    Precondition,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("negative exponent at position {pos}")]
    NegativeExponent { pos: usize },
    #[error("invalid variable names: {0}")]
    InvalidVariables(String),
    #[error("invalid rational `{0}`: expected an integer or a/b")]
    InvalidRational(String),
    #[error("exponent vector of length {found} where {expected} was expected")]
    LengthMismatch { expected: usize, found: usize },
    #[error("the number of variables must be at least 1")]
    NoVariables,
    #[error("exponent arithmetic overflowed")]
    Overflow,
    #[error("operation requires a nonzero ideal")]
    ZeroIdeal,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{q} is not a power of {p}")]
    NotPowerOf { q: u64, p: u64 },
    #[error("parameter must be at least 1, got {0}")]
    ScaleBelowOne(String),
    #[error("parameter must be at least 0, got {0}")]
    NegativeScale(String),
    #[error("invalid parameter range: {0}")]
    InvalidRange(String),
    #[error("ideal is not primary to the maximal ideal (missing a pure power of variable {var})")]
    NotPrimary { var: usize },
    #[error("number of Frobenius exponents must be at least {min}, got {got}")]
    TooFewExponents { min: u32, got: u32 },
    #[error("polyhedron too large for exact elimination: {0}")]
    TooLarge(String),
    #[error("closure is already equal to the ideal; nothing to adjoin")]
    NothingToAdjoin,
}

impl Error {
    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "syntax",
            Error::UnknownVariable { .. } => "unknown-variable",
            Error::NegativeExponent { .. } => "negative-exponent",
            Error::InvalidVariables(_) => "invalid-variables",
            Error::InvalidRational(_) => "invalid-rational",
            Error::LengthMismatch { .. } => "length-mismatch",
            Error::NoVariables => "no-variables",
            Error::Overflow => "overflow",
            Error::ZeroIdeal => "zero-ideal",
            Error::NotPrime(_) => "not-prime",
            Error::NotPowerOf { .. } => "not-prime-power",
            Error::ScaleBelowOne(_) => "scale-below-one",
            Error::NegativeScale(_) => "negative-scale",
            Error::InvalidRange(_) => "invalid-range",
            Error::NotPrimary { .. } => "not-primary",
            Error::TooFewExponents { .. } => "too-few-exponents",
            Error::TooLarge(_) => "too-large",
            Error::NothingToAdjoin => "nothing-to-adjoin",
        }
    }

    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Syntax { .. }
            | Error::UnknownVariable { .. }
            | Error::NegativeExponent { .. }
            | Error::InvalidVariables(_)
            | Error::InvalidRational(_)
            | Error::LengthMismatch { .. }
            | Error::NoVariables => ErrorClass::Usage,
            _ => ErrorClass::Precondition,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
