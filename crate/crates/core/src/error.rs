use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("prime {p} is ramified (divides conductor {n})")]
    Ramified { p: u64, n: u64 },
    #[error("element is not {p}-integral")]
    NotPIntegral { p: u64 },
    #[error("series has nonzero constant term")]
    NonzeroConstantTerm,
    #[error("coefficient index {index} exceeds truncation {truncation}")]
    IndexOutOfRange { index: usize, truncation: usize },
    #[error("linear coefficient is not invertible")]
    NonInvertibleLinearCoeff,
    #[error("sequence is not periodic within the horizon")]
    NotPeriodic,
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
}

pub type Result<T> = std::result::Result<T, Error>;
