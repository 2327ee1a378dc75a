use std::fmt;

/// Crate-wide error type.
///
/// Operations in this crate are total over their documented preconditions and
/// report everything else through this enum rather than panicking: malformed
/// input, symbols outside the active signature, parameter tables that stop
/// short of a requested index, absent optional capabilities, and blown
/// enumeration budgets all surface as distinct variants so callers (and the
/// CLI) can map them to the right exit code.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Syntax error while reading a formula.
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// A term or predicate does not belong to the signature in effect.
    #[error("signature error: {0}")]
    Signature(String),

    /// A structurally valid input lies outside an operation's domain
    /// (for example a disjunction handed to a cube-only routine).
    #[error("{0}")]
    Domain(String),

    /// Evaluation hit a symbol the interpretation leaves uninterpreted.
    #[error("uninterpreted symbol: {0}")]
    Uninterpreted(String),

    /// A parameter table is malformed or violates one of its constraints.
    /// The message names the first violated constraint.
    #[error("parameter error: {0}")]
    Param(String),

    /// A parameter table was consulted beyond its finite prefix.
    #[error("parameter table exhausted: {0}")]
    ParamRange(String),

    /// The theory does not implement the requested optional operation.
    #[error("capability not provided: {0}")]
    Capability(String),

    /// An enumeration or search bound was exceeded.
    #[error("limit exceeded: {0}")]
    Limit(String),

    /// A query lies outside the family a combined oracle answers.
    #[error("query outside oracle family: {0}")]
    OutOfFamily(String),

    /// An internal consistency guarantee failed to hold.
    #[error("contract violation: {0}")]
    Contract(String),

    /// Bad command-line or configuration input.
    #[error("{0}")]
    Usage(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parse(pos: usize, msg: impl fmt::Display) -> Self {
        Error::Parse { pos, msg: msg.to_string() }
    }
}
