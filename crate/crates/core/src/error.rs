use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PkpError {
    #[error("invalid item at input position {index}: {reason}")]
    InvalidItem { index: usize, reason: String },

    #[error("instance may overflow 64-bit sums: n = {n}, largest value = {max_value}")]
    OverflowRisk { n: usize, max_value: i64 },

    #[error("negative capacity {0}")]
    InvalidCapacity(i64),

    #[error("selected items weigh {weight}, capacity is {capacity}")]
    CapacityExceeded { weight: i64, capacity: i64 },

    #[error("item index {index} out of range for an instance with {n} items")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("parse error on line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("instance has {n} items, brute force is limited to {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("dynamic programming budget exceeded: {reason}")]
    BudgetExceeded { reason: String },

    #[error("instance violates the {case} precondition: {reason}")]
    CaseViolated { case: &'static str, reason: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, PkpError>;
