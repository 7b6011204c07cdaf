use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the stability indices and their file formats.
#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite value at row {row}, column {col}")]
    NonFiniteInput { row: usize, col: usize },

    #[error("shape mismatch in configuration {config}: {detail}")]
    ShapeMismatch { config: usize, detail: String },

    #[error("graph has no edges")]
    EmptyGraph,

    #[error("at least 2 configurations are required, got {0}")]
    TooFewConfigs(usize),

    #[error("k = {k} must satisfy 1 <= k < {nodes} (node count)")]
    KTooLarge { k: usize, nodes: usize },

    #[error("instance with {nodes} nodes exceeds the assignment cap of {cap}")]
    InstanceTooLarge { nodes: usize, cap: usize },

    #[error("not a bijection: {0}")]
    NotABijection(String),

    #[error("bad magic bytes: expected \"GGE1\"")]
    BadMagic,

    #[error("truncated file: expected {expected} bytes, found {actual}")]
    TruncatedFile { expected: u64, actual: u64 },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn shape(config: usize, detail: impl Into<String>) -> Self {
        Error::ShapeMismatch {
            config,
            detail: detail.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code for this error: 3 for broken internal invariants, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invariant(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
