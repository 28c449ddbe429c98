use thiserror::Error;

/// Errors shared across the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfError {
    #[error("division by zero")]
    DivisionByZero,

    #[error("ring spec mismatch: {0} vs {1}")]
    SpecMismatch(String, String),

    #[error("generator basis mismatch")]
    BasisMismatch,

    #[error("no canonical derivation-compatible map {0} -> {1}")]
    NoCanonicalMap(String, String),

    #[error("exponent {0} is not valid in ring {1}")]
    BadExponent(String, String),

    #[error("product of generators {0} and {1} is undefined in both orientations")]
    UndefinedProduct(String, String),

    #[error("matrix has nonzero trace")]
    NonzeroTrace,

    #[error("element lies outside V (x) R: {0}")]
    OutsideV(String),

    #[error("generator index {0} out of range")]
    BadGenerator(usize),

    #[error("morphism image parity does not match generator {0}")]
    ParityMismatch(String),

    #[error("determinant normalization requires a field extension: no square root of {0} in Q(i)")]
    ExtensionRequired(String),

    #[error("not an automorphism: {0}")]
    NotAnAutomorphism(String),

    #[error("invalid SL2 pair: {0}")]
    InvalidPair(String),

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("{0}")]
    Usage(String),
}

impl ConfError {
    pub fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        ConfError::Parse { line, col, msg: msg.into() }
    }
}
