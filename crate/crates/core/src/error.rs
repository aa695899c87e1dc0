use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("conductor mismatch: {0} vs {1}")]
    ContextMismatch(u32, u32),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic must be an odd prime, got {0}")]
    EvenCharacteristic(u64),
    #[error("modulus {0} is reducible")]
    Reducible(String),
    #[error("invalid modulus: {0}")]
    BadModulus(String),
    #[error("inverse of zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("conductor {0} exceeds the cap {1}")]
    ConductorCap(u64, u64),
}

pub type Result<T> = std::result::Result<T, Error>;
