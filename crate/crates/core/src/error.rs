use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("empty identifier")]
    EmptyId,

    #[error("duplicate document id `{0}`")]
    DuplicateDocument(String),

    #[error("self-citation `{0}` -> `{0}` is not permitted")]
    SelfLoop(String),

    #[error("unknown node `{0}`")]
    UnknownNode(String),

    #[error("unknown journal `{0}`")]
    UnknownJournal(String),

    #[error("invalid document `{id}`: {reason}")]
    InvalidDocument { id: String, reason: String },

    #[error("no metadata for document `{0}`")]
    MissingMetadata(String),

    #[error("graph has no nodes")]
    EmptyGraph,

    #[error("graph has no edges")]
    NoEdges,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(
        "invalid time window: source years {start}..={end} must not exceed cite year {cite_year}"
    )]
    InvalidWindow {
        cite_year: i32,
        start: i32,
        end: i32,
    },

    #[error("invalid journal matrix: {0}")]
    InvalidMatrix(String),

    #[error("journals give no references, influence weight undefined: {}", .0.join(", "))]
    ZeroReferences(Vec<String>),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("no items published in the impact-factor window for `{0}`")]
    EmptyImpactWindow(String),

    #[error("distribution total is zero")]
    ZeroTotal,

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("input is not sorted by cites descending (first violation at position {0})")]
    Unsorted(usize),

    #[error("empty sample")]
    EmptySample,

    #[error("author `{author}` not found on document `{doc}`")]
    AuthorNotFound { author: String, doc: String },

    #[error("correlation undefined: {0}")]
    UndefinedCorrelation(String),

    #[error("{path}: {message}")]
    Io { path: String, message: String },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: u64,
        message: String,
    },
}
