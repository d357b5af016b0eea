use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("incompatible circulant sizes: {0} vs {1}")]
    ModulusMismatch(u64, u64),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("arithmetic overflow while computing {0}")]
    Overflow(String),

    #[error("duplicate entry at ({0}, {1})")]
    DuplicateEntry(usize, usize),

    #[error("entry ({row}, {col}) outside a {nrows}x{ncols} matrix")]
    OutOfRange {
        row: usize,
        col: usize,
        nrows: usize,
        ncols: usize,
    },

    #[error("path touches empty block ({0}, {1})")]
    EmptyBlock(usize, usize),

    #[error("malformed block path: {0}")]
    MalformedPath(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("division by zero in GF(2^{0})")]
    ZeroInverse(u32),

    #[error("field mismatch: GF(2^{0}) vs GF(2^{1})")]
    FieldMismatch(u32, u32),

    /// Colliding `(l, l', k, k')` index combinations.
    #[error("extension condition fails at {} index combination(s)", .0.len())]
    ExtensionCondition(Vec<(usize, usize, usize, usize)>),

    #[error("label constraints are inconsistent: {0}")]
    Inconsistent(String),

    #[error("matrix pair is not orthogonal ({0} nonzero product entries)")]
    NotOrthogonal(usize),

    #[error("no isomorphism witness: {0}")]
    NoWitness(String),

    #[error("json: {0}")]
    Json(String),

    #[error("io: {0}")]
    Io(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
