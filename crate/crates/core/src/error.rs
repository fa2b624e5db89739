use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported group type `{0}` (supported: A1~, A2~)")]
    UnsupportedType(String),
    #[error("elements belong to different groups")]
    GroupMismatch,
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("radius exceeded: need {needed}, have {available}")]
    RadiusExceeded { needed: usize, available: usize },
    #[error("v^{shift} * p has a term v^{lowest} outside A+")]
    NotInAPlus { shift: i32, lowest: i32 },
    #[error("coefficient is not invertible in the Laurent ring")]
    NonInvertibleTerm,
    #[error("geometric tail does not converge: {0}")]
    DivergentTail(String),
    #[error("valuation threshold {threshold} is not decidable modulo p^{depth}")]
    DepthTooSmall { threshold: u32, depth: u32 },
    #[error("enumeration of {needed} elements exceeds budget {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cache error: {0}")]
    Cache(String),
}
