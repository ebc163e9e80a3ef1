use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid genus {0}: the algebra needs g >= 2")]
    InvalidGenus(u32),

    #[error("genus {0} is too small: Torelli-level operations need g >= 3")]
    GenusTooSmall(u32),

    #[error("genus mismatch: {left} vs {right}")]
    GenusMismatch { left: u32, right: u32 },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("basis index {index} out of range for genus {genus} (expected 1..={max})")]
    IndexOutOfRange { index: i64, genus: u32, max: u32 },

    #[error("repeated basis index in triple ({0}, {1}, {2})")]
    RepeatedIndex(i64, i64, i64),

    #[error("malformed tri-vector: {0}")]
    MalformedTriVector(String),

    #[error("dimension mismatch: expected {expected}x{expected} matrix, got {got}x{got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not invertible over the integers (determinant {0})")]
    NotUnimodular(i128),

    #[error("matrix is not an admissible basis change: {0}")]
    NotAdmissible(&'static str),

    #[error("unknown letter `{0}`")]
    UnknownLetter(String),

    #[error("invalid word expression: {0}")]
    WordSyntax(String),

    #[error("invalid generator table: {0}")]
    Table(String),

    #[error("bound certification failed: {0}")]
    Certification(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Certification failures indicate an implementation bug; everything else
    /// is bad input.
    pub fn is_certification_failure(&self) -> bool {
        matches!(self, Error::Certification(_))
    }
}
