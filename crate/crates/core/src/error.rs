use thiserror::Error;

/// Error type shared by the solver library.
///
/// Variants map onto the CLI exit-code classes: parse failures, width
/// validation failures, violated preconditions, and exceeded size guards.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("width validation failed: {0}")]
    WidthValidation(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("size guard exceeded: {0}")]
    Guard(String),

    /// A caller handed a value that breaks an operation's contract
    /// (for example a representative request for a set that is not a
    /// cluster set).
    #[error("contract violation: {0}")]
    Contract(String),

    /// An internal invariant failed; this signals a bug or an input that
    /// silently violated a width precondition (for example a cycle in a
    /// chain-order digraph).
    #[error("invariant violation: {0}")]
    Invariant(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
    pub fn width(msg: impl Into<String>) -> Self {
        Error::WidthValidation(msg.into())
    }
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
    pub fn guard(msg: impl Into<String>) -> Self {
        Error::Guard(msg.into())
    }
    pub fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}
