use thiserror::Error;

/// Every failure mode of the laboratory.
///
/// Preconditions that are violated by the caller are reported, never papered
/// over with a wrong answer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("both arguments are zero")]
    BothZero,
    #[error("input is a unit or zero")]
    UnitOrZero,
    #[error("input is zero")]
    ZeroInput,
    #[error("infinite set: {0}")]
    InfiniteSet(String),
    #[error("method unavailable: {0}")]
    MethodUnavailable(String),
    #[error("ideal is not proper")]
    ImproperIdeal,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("zero is not a point of the punctured space")]
    ZeroInPunctured,
    #[error("not irreducible: {0}")]
    NotIrreducible(String),
    #[error("known set is empty")]
    EmptyKnownSet,
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("certificate failed re-verification: {0}")]
    CertificateInvalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
