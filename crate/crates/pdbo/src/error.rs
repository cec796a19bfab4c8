use thiserror::Error;

/// Errors surfaced by construction, parsing and solver configuration.
///
/// Numeric failures inside a solver run are not errors at this level: they
/// are recorded as a per-run status in the report so that the surviving
/// runs of a batch still produce a result.
#[derive(Debug, Error)]
pub enum Error {
    #[error("term {term_index}: variable index {var} out of range for n={n}")]
    VariableOutOfRange {
        term_index: usize,
        var: usize,
        n: usize,
    },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("vector is not on the probability simplex: {0}")]
    NotOnSimplex(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("instance too large for exhaustive enumeration: n={n}, cap={cap}")]
    Capacity { n: usize, cap: usize },

    #[error("unsupported constraint kind for this operation: {0}")]
    UnsupportedKind(String),

    #[error("all {0} runs failed numerically")]
    AllRunsFailed(usize),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: String,
        #[source]
        source: csv::Error,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    pub(crate) fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
