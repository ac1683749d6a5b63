use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Cartan type `{input}`: {reason}")]
    InvalidType { input: String, reason: String },

    #[error("{what} of size {size} exceeds the configured cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("parabolic {lower} is not contained in {upper}")]
    NotOrdered { lower: String, upper: String },

    #[error("weight {weight} is not dominant for {context}")]
    NotDominant { weight: String, context: String },

    #[error("{0} requires a reduced root system")]
    NonReduced(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("parabolic {0} is not a stratum of this module")]
    NotInStrata(String),

    #[error("stratum set is not open: {0}")]
    NotOpen(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("module file: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
