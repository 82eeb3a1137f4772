use thiserror::Error;

/// Errors shared by every module of the toolkit.
#[derive(Debug, Error)]
pub enum EdsError {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{what} has {actual} vertices, exceeding the cap of {limit}")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("component {component} (vertices {vertices:?}) matches no family member")]
    FamilyMismatch {
        component: usize,
        vertices: Vec<usize>,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("family admits no polynomial kernel ({item}: {witness})")]
    NoPolyKernelFamily { item: String, witness: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, EdsError>;

impl EdsError {
    /// Exit code convention for the CLI: 2 usage/parse, 3 cap exceeded,
    /// 1 negative answer (no-poly-kernel family counts as one).
    pub fn exit_code(&self) -> i32 {
        match self {
            EdsError::Parse { .. } | EdsError::InvalidInput(_) => 2,
            EdsError::CapExceeded { .. } => 3,
            EdsError::NoPolyKernelFamily { .. } => 1,
            _ => 2,
        }
    }
}
