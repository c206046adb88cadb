use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("index out of range: {0}")]
    Index(String),

    #[error("unknown generator '{0}'")]
    UnknownGenerator(String),

    #[error("size bound exceeded: {0}")]
    SizeBound(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("family constraint violated: {0}")]
    Constraint(String),

    #[error("bracket leaves the span of the generators: {0}")]
    Closure(String),

    #[error("divergence check failed: {0}")]
    Divergence(String),

    #[error("truncation cap too small: {0}")]
    Cap(String),

    #[error("cohomology dimension unstable across degree caps: {0}")]
    CapInstability(String),

    #[error("contract violated: {0}")]
    Contract(String),

    #[error("no invariant form: {0}")]
    NoForm(String),

    #[error("fixture error: {0}")]
    Fixture(String),

    #[error("realization mismatch: {0}")]
    Realization(String),

    #[error("not implemented: {0}")]
    NotImplemented(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
