use thiserror::Error;

use crate::diagram::{ArrowId, End};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed token `{0}`")]
    MalformedToken(String),

    #[error("arrow {id} has two {end} endpoints")]
    DuplicateEndpoint { id: ArrowId, end: End },

    #[error("arrow {0} is missing an endpoint")]
    MissingEndpoint(ArrowId),

    #[error("arrow {0} has different signs on its two endpoints")]
    SignMismatch(ArrowId),

    #[error("arrow {0} has different labels on its two endpoints")]
    LabelMismatch(ArrowId),

    #[error("invalid endpoint layout: {0}")]
    InvalidSlots(String),

    #[error("unknown arrow id {0}")]
    UnknownArrow(ArrowId),

    #[error("invalid JSON diagram: {0}")]
    Json(String),

    #[error("operation requires a diagram on the line")]
    NotLineHost,

    #[error("label {label} is outside the range allowed by bound m = {bound}")]
    LabelOutOfRange { label: String, bound: String },

    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    #[error("move does not apply to this diagram: {0}")]
    StaleMove(String),

    #[error("arrows {0} and {1} are not linked")]
    UnlinkedPair(ArrowId, ArrowId),

    #[error("designated arrows must be two distinct arrows")]
    BadDesignation,

    #[error("smoothing the designated arrows does not leave a single component")]
    SmoothingDisconnected,

    #[error("skein hypotheses fail: {0}")]
    SkeinHypotheses(String),

    #[error("presentation needs {generators} generators, budget is {budget}")]
    BudgetExceeded { generators: u128, budget: u128 },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}
