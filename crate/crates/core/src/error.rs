use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("line {line}: tau in alphabet")]
    TauInAlphabet { line: usize },

    #[error("line {line}: undeclared action {action}")]
    UndeclaredAction { line: usize, action: String },

    #[error("line {line}: duplicate action {action} in alphabet")]
    DuplicateAction { line: usize, action: String },

    #[error("missing init")]
    MissingInit,

    #[error("missing alphabet")]
    MissingAlphabet,

    #[error("invalid action token `{0}`")]
    InvalidAction(String),

    #[error("invalid state name `{0}`")]
    InvalidStateName(String),

    #[error("duplicate state name `{0}`")]
    DuplicateState(String),

    #[error("unknown state `{0}`")]
    UnknownState(String),

    #[error("transition label {0} is not in the alphabet")]
    LabelNotInAlphabet(String),

    #[error("{0}: tau is not allowed here")]
    TauNotAllowed(&'static str),

    #[error("tag collision: {0}")]
    TagCollision(String),

    #[error("unresolved name `{0}`")]
    UnresolvedName(String),

    #[error("expression error at offset {offset}: {message}")]
    Expr { offset: usize, message: String },

    #[error("component {0} needs a history-refined normal form")]
    HistoryRequired(&'static str),

    #[error("normal form carries no annotations")]
    MissingAnnotations,

    #[error("unknown congruence `{0}`")]
    UnknownCongruence(String),

    #[error("unknown component `{0}`")]
    UnknownComponent(String),

    #[error("unsupported format `{0}`")]
    UnsupportedFormat(String),

    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
