use thiserror::Error;

/// Problems found while reading a TRI1 or SURF1 document.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: syntax error: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: index out of range: {msg}")]
    IndexOutOfRange { line: usize, msg: String },
    #[error("line {line}: face {face} of tetrahedron {tet} is glued to itself")]
    FaceGluedToItself { line: usize, tet: usize, face: usize },
    #[error("line {line}: gluing is not an involution: {msg}")]
    NotInvolution { line: usize, msg: String },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match self {
            ParseError::Syntax { line, .. }
            | ParseError::IndexOutOfRange { line, .. }
            | ParseError::FaceGluedToItself { line, .. }
            | ParseError::NotInvolution { line, .. } => *line,
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    /// The input does not satisfy the documented precondition of an operation.
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("inadmissible normal surface: {0}")]
    InadmissibleSurface(String),
    #[error("invalid gluing: {0}")]
    Gluing(String),
    /// An internal consistency check failed; this indicates a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
