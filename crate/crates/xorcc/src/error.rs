use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("dimension {n} exceeds cap {cap}; raise it with --cap-override")]
    CapExceeded { n: usize, cap: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error("{path}:{line}:{col}: {msg}")]
    Parse {
        path: String,
        line: usize,
        col: usize,
        msg: String,
    },

    /// An internal consistency check failed mid-run (e.g. an online
    /// algorithm invariant). Carries a dump suitable for a bug report.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
