use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by fallible operations in this crate.
///
/// Shape preconditions on matrix arithmetic are programmer errors and panic
/// instead; everything data-dependent (file contents, algebraic obstructions,
/// enumeration guards) comes through here.
#[derive(Debug, Error)]
pub enum Error {
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,

    #[error("the zero polynomial has no z-valuation")]
    ZeroValuation,

    #[error("denominator has constant term 0, so it is not a unit of the localization")]
    DenominatorNotUnit,

    #[error("division by zero fraction")]
    DivisionByZero,

    #[error("quotient {0} is not invertible in the localization (divisible by z)")]
    NotInvertibleInLocalization(String),

    #[error("transducer is not injective with delay {tau}")]
    NotInjectiveAtDelay { tau: usize },

    #[error(
        "instance too large for exhaustive check: needs 2^{required_log2} enumeration, guard is 2^{guard_log2}"
    )]
    GuardExceeded { required_log2: u32, guard_log2: u32 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid transducer description: {0}")]
    InvalidLft(String),

    #[error("parse error: {0}")]
    Parse(String),
}
