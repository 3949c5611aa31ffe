use thiserror::Error;

/// Failure classes. Each maps to one process exit code in the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// A documented precondition of the operation does not hold.
    Precondition,
    /// The input is malformed or internally inconsistent.
    Integrity,
    /// A configured resource cap was hit.
    ResourceCap,
}

impl ErrorClass {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorClass::Precondition => 2,
            ErrorClass::Integrity => 3,
            ErrorClass::ResourceCap => 4,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rank {rank} too small: label needs at least {needed}")]
    RankTooSmall { rank: usize, needed: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    #[error("eigenvalue of infinite order: {0}")]
    NotRootOfUnity(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("integrity check failed: {0}")]
    Integrity(String),

    #[error("group order {predicted} exceeds cap {cap}")]
    GroupTooLarge { predicted: u128, cap: u64 },

    #[error("cyclotomic order cap {cap} exceeded: {detail}")]
    CyclotomicCap { cap: u64, detail: String },

    #[error("resource cap exceeded: {0}")]
    Cap(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::RankTooSmall { .. } | Error::Precondition(_) | Error::Hypothesis(_) | Error::NotRootOfUnity(_) => {
                ErrorClass::Precondition
            }
            Error::Invalid(_) | Error::Integrity(_) => ErrorClass::Integrity,
            Error::GroupTooLarge { .. } | Error::CyclotomicCap { .. } | Error::Cap(_) => ErrorClass::ResourceCap,
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.class().exit_code()
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invalid(msg.into()))
}
