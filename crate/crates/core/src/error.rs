use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("hamiltonian is empty")]
    EmptyHamiltonian,

    #[error("width mismatch: {left} vs {right}")]
    WidthMismatch { left: usize, right: usize },

    #[error("{what} ceiling exceeded: {got} > {limit}")]
    CeilingExceeded {
        what: &'static str,
        got: usize,
        limit: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("circuit block is not unitary (deviation {deviation:.3e}); ancilla did not return to |0>")]
    AncillaLeak { deviation: f64 },

    #[error("distribution does not sum to one (total {total})")]
    Normalization { total: f64 },

    #[error("config: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Short stable tag used in the CLI's machine-readable error line.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::EmptyHamiltonian => "empty_hamiltonian",
            Error::WidthMismatch { .. } => "width_mismatch",
            Error::CeilingExceeded { .. } => "ceiling_exceeded",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::AncillaLeak { .. } => "ancilla_leak",
            Error::Normalization { .. } => "normalization",
            Error::Config(_) => "config",
            Error::Io { .. } => "io",
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
