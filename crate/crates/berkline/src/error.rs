//! Crate-wide error type.

use thiserror::Error;

/// Errors raised by the library.
///
/// Variants split into two groups: input validation (rejected before any
/// computation starts) and computation errors (a well-formed request hit a
/// value outside the representable domain). The CLI maps the former to exit
/// code 2 and the latter to exit code 1.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("coefficient {0} is not p-integral (negative {1}-adic valuation)")]
    NotIntegral(String, u64),

    #[error("exponent must be nonnegative, got {0}")]
    NegativeExponent(String),

    #[error("magnitude {0}^{1} is irrational and cannot be represented exactly")]
    IrrationalPower(String, String),

    #[error("divisor must be monic, got leading coefficient {0}")]
    NonMonic(String),

    #[error("divisor must be nonconstant")]
    ConstantDivisor,

    #[error("division by zero polynomial")]
    ZeroDivisor,

    #[error("degree bound {0} out of range (expected 1..={1})")]
    DegreeOutOfRange(u32, u32),

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("invalid neighborhood datum: {0}")]
    InvalidDatum(String),

    #[error("invalid test set: {0}")]
    InvalidTestSet(String),

    #[error("invalid net: {0}")]
    InvalidNet(String),

    #[error("tail {0} exceeds net length {1}")]
    TailTooLong(usize, usize),

    #[error("unsupported path configuration: {0}")]
    UnsupportedPair(String),

    #[error("path needs at least {0} steps")]
    TooFewSteps(usize),

    #[error("polynomial syntax error: {0}")]
    PolySyntax(String),

    #[error("group order {0} out of range (p^N must stay <= {1})")]
    OrderTooLarge(u64, u64),

    #[error("Eisenstein witness violated for p={p}, l={l}: {reason}")]
    WitnessFailed { p: u64, l: u32, reason: String },

    #[error("invalid group ring element: {0}")]
    InvalidGroupElement(String),

    #[error("ray index {0} out of range (0..={1})")]
    RayOutOfRange(usize, usize),

    #[error("{0} is not an {1}-th root of unity modulo {2}")]
    NotRootOfUnity(u64, u64, u64),

    #[error("order {0} is neither a power of {1} nor a divisor of {2}")]
    UnsupportedOrder(u64, u64, u64),

    #[error("valuation exceeds working precision {0}")]
    PrecisionExhausted(u32),

    #[error("malformed JSON: {0}")]
    Json(String),

    #[error("selftest failed: {0}")]
    SelftestFailed(String),
}

impl Error {
    /// Whether this is an input-validation failure (CLI exit 2) as opposed
    /// to a computation error (CLI exit 1).
    pub fn is_validation(&self) -> bool {
        !matches!(
            self,
            Error::NotIntegral(..)
                | Error::IrrationalPower(..)
                | Error::UnsupportedPair(..)
                | Error::WitnessFailed { .. }
                | Error::PrecisionExhausted(..)
                | Error::SelftestFailed(..)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
