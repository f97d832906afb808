use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("line {line}: undeclared vertex '{name}'")]
    UndeclaredVertex { line: usize, name: String },

    #[error("line {line}: duplicate vertex '{name}'")]
    DuplicateVertex { line: usize, name: String },

    #[error("line {line}: edge label present without a group declaration")]
    LabelWithoutGroup { line: usize },

    #[error("unknown vertex '{0}'")]
    UnknownVertex(String),

    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("group arithmetic overflow")]
    Overflow,

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("frame invariant violated: {0}")]
    FrameInvariant(String),

    #[error("calibration failed: {0}")]
    Calibration(String),

    #[error("malformed certificate: {0}")]
    Certificate(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn budget_exceeded(&self) -> bool {
        matches!(self, Error::BudgetExceeded(_))
    }
}
