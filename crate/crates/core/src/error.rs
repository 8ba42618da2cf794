use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),

    #[error("invalid scalar `{0}`")]
    InvalidScalar(String),

    #[error("the scalar k must be non-zero (envelopes and their coalgebra structure assume k != 0)")]
    ZeroK,

    #[error("invalid structure constants: {0}")]
    InvalidStructure(String),

    #[error("degree cap exceeded: X-degree {got} > {cap}")]
    DegreeCap { got: usize, cap: usize },

    #[error("PBW defect: {reason}; witness: {witness}")]
    PbwDefect { reason: String, witness: String },

    #[error("comultiplication is not well defined: Delta({relation}) = {image} != 0")]
    IllDefinedDelta { relation: String, image: String },

    #[error("not an invariant algebra: {0}")]
    NotInvariant(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("word is not canonical: {0}")]
    NotCanonical(String),

    #[error("insufficient interpolation points: need at least {need} distinct k samples, got {got}")]
    InsufficientSamples { need: usize, got: usize },

    #[error("not closed under product: {0}")]
    NotClosed(String),

    #[error("{0}")]
    Usage(String),

    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },

    #[error("malformed definition file: {0}")]
    Format(String),
}

impl Error {
    /// Whether the error reports bad input rather than a mathematical
    /// failure of the object under test.
    pub fn is_usage(&self) -> bool {
        !matches!(
            self,
            Error::PbwDefect { .. } | Error::IllDefinedDelta { .. } | Error::NotInvariant(_) | Error::NotClosed(_)
        )
    }
}
