use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("resource guard: {requested} exceeds configured maximum {max}")]
    ResourceGuard { requested: u64, max: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("integrity error at line {line}: {msg}")]
    Integrity { line: usize, msg: String },

    #[error("height {requested} beyond table maximum {max_height}")]
    Range { requested: f64, max_height: f64 },

    #[error("unknown bound id `{0}`")]
    UnknownBound(String),

    #[error("bad zero cache: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
