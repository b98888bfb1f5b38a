use thiserror::Error;

/// Errors raised by the library. Each variant names the kind of contract that was broken.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("containment violated: {0}")]
    Containment(String),

    /// A complex, subcomplex or map is not well formed.
    #[error("structural error: {0}")]
    Structural(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Filtration data violates one of its axioms.
    #[error("invalid filtration ({kind}): {message}")]
    Validation { kind: ValidationKind, message: String },

    /// A linear system that exactness guarantees to be solvable was not.
    /// `witness` is the support (cell indices) of the offending right-hand side.
    #[error("exactness violated: {message}")]
    Exactness { message: String, witness: Vec<usize> },

    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),

    #[error("no split found: {0}")]
    NoSplitFound(String),

    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("input error: {0}")]
    Input(String),

    /// Any other error, raised while reading the given line of a document.
    #[error("line {line}: {source}")]
    AtLine { line: usize, source: Box<Error> },
}

impl Error {
    /// Attaches a document line unless the error already carries one.
    pub fn at_line(self, line: usize) -> Error {
        match self {
            Error::Syntax { .. } | Error::AtLine { .. } => self,
            other => Error::AtLine {
                line,
                source: Box::new(other),
            },
        }
    }

    /// The innermost error, with line information stripped.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtLine { source, .. } => source.root(),
            other => other,
        }
    }
}

/// Which axiom of a filtration was violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValidationKind {
    Bounds,
    Monotone,
    Boundary,
    Equivariance,
}

impl std::fmt::Display for ValidationKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ValidationKind::Bounds => "bounds",
            ValidationKind::Monotone => "monotone",
            ValidationKind::Boundary => "boundary",
            ValidationKind::Equivariance => "equivariance",
        };
        f.write_str(s)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
