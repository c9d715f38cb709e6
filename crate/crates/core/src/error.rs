use thiserror::Error;

/// Errors raised by the weight, strata, section and threshold computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("EmptyInput: need at least two weights, got {len}")]
    EmptyInput { len: usize },
    #[error("NonPositiveWeight: weight at index {0} is not a positive integer")]
    NonPositiveWeight(usize),
    #[error("IndexOutOfRange: index {index} out of range for {len} weights")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("NotWellFormed: weights {0:?} are not well-formed")]
    NotWellFormed(Vec<u64>),
    #[error("NotIsolated: weights {0:?} are not pairwise coprime")]
    NotIsolated(Vec<u64>),
    #[error("DimensionTooSmall: dimension {dim} is below the required {required}")]
    DimensionTooSmall { dim: usize, required: usize },
    #[error("WrongDimension: expected {expected} weights, got {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("SubsetTooSmall: subset has {size} indices, at least 4 are required")]
    SubsetTooSmall { size: usize },
    #[error("InvalidSubset: subset {0:?} has repeated or out-of-range indices")]
    InvalidSubset(Vec<usize>),
    #[error("NegativeDegree: degree {0} is negative")]
    NegativeDegree(i64),
    #[error("InvalidMultiple: multiple {0} must be at least {1}")]
    InvalidMultiple(u64, u64),
    #[error("InvalidK: {given} is not the Picard generator degree {expected}")]
    InvalidK { given: String, expected: String },
    #[error("DegreeTooLarge: degree {0} does not fit the enumeration range")]
    DegreeTooLarge(String),
    #[error("BudgetExceeded: decomposition search exceeded {budget} memo entries")]
    BudgetExceeded { budget: usize },
}

impl Error {
    /// Variant name, used as the error tag in CLI diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            Error::EmptyInput { .. } => "EmptyInput",
            Error::NonPositiveWeight(_) => "NonPositiveWeight",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::NotWellFormed(_) => "NotWellFormed",
            Error::NotIsolated(_) => "NotIsolated",
            Error::DimensionTooSmall { .. } => "DimensionTooSmall",
            Error::WrongDimension { .. } => "WrongDimension",
            Error::SubsetTooSmall { .. } => "SubsetTooSmall",
            Error::InvalidSubset(_) => "InvalidSubset",
            Error::NegativeDegree(_) => "NegativeDegree",
            Error::InvalidMultiple(..) => "InvalidMultiple",
            Error::InvalidK { .. } => "InvalidK",
            Error::DegreeTooLarge(_) => "DegreeTooLarge",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
