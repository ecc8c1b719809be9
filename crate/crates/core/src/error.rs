use thiserror::Error;

/// Errors raised by the library. Verification failures are not errors; they
/// are reported through [`crate::report::VerificationReport`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation {0:?}: images must be a bijection of 1..=n")]
    InvalidPermutation(Vec<i64>),

    #[error("cannot parse group element from {input:?}: {reason}")]
    ParseElement { input: String, reason: String },

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("zero polynomial has no factorization")]
    ZeroPolynomial,

    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,

    #[error("invalid closed-form method id {0} (expected 1..=4)")]
    InvalidMethod(u8),

    #[error("series truncation mismatch: {left} vs {right}")]
    TruncationMismatch { left: u32, right: u32 },

    #[error("series operation needs every non-constant term to carry a positive power of u")]
    NotNilpotent,

    #[error("product exponent is not a nonnegative integer: {0}")]
    NonIntegralExponent(String),

    #[error("palindromic factorization convention violated: {0}")]
    Convention(String),

    #[error("not a valid outcome of the two-pile signed shuffle: {0}")]
    InvalidShuffleOutcome(String),

    #[error("masses do not sum to one (total {0})")]
    NotNormalized(String),

    #[error("repeated symbol in cycle {0:?}")]
    RepeatedSymbol(Vec<usize>),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
