use thiserror::Error;

use crate::poly::StructuredTable;
use crate::poset::Label;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cover relation contains a cycle through labels {labels:?}")]
    Cycle { labels: Vec<Label> },

    #[error("cover {lower}<{upper} is not compatible with a natural labeling")]
    NotNatural { lower: Label, upper: Label },

    #[error("label {label} is outside 1..={universe}")]
    LabelOutOfRange { label: Label, universe: u32 },

    #[error("labels {labels:?} are not deletable")]
    NotDeletable { labels: Vec<Label> },

    #[error("`{word}` is not a linear extension: {reason}")]
    NotAnExtension { word: String, reason: String },

    #[error("invalid selection: {0}")]
    InvalidSelection(String),

    #[error("{what}: size {size} exceeds guard {limit}")]
    GuardExceeded {
        what: &'static str,
        size: u64,
        limit: u64,
    },

    #[error("enumeration budget of {budget} extensions exceeded after visiting {visited}")]
    BudgetExceeded {
        budget: u64,
        visited: u64,
        partial: Box<StructuredTable>,
    },

    #[error("hypergeometric series with upper parameter {0} does not terminate")]
    NonTerminating(i64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("verification mismatch: {0}")]
    Mismatch(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
