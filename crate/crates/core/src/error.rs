use crate::Nat;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("arithmetic overflow while {0}")]
    Overflow(&'static str),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("contract violation: {0}")]
    ContractViolation(String),
    #[error("index {0} is undefined in family {1}")]
    UndefinedIndex(Nat, String),
    #[error("index {0} is unresolved in family {1}")]
    Unresolved(Nat, String),
    #[error("unknown registry id {0}")]
    UnknownLearner(u64),
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
