use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("modulus {0} is not prime")]
    NotPrime(u32),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),

    #[error("cannot extend {measure} by {length}: length must exceed every element")]
    InvalidExtension { measure: String, length: u32 },

    #[error("cap exceeded: {0}")]
    CapExceeded(String),

    #[error("indecomposability undecided within cap: {0}")]
    Undecided(String),

    #[error("module is projective")]
    Projective,

    #[error("module is injective")]
    Injective,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_)
            | Error::InvalidModule(_)
            | Error::NotPrime(_)
            | Error::Shape(_)
            | Error::ParameterMismatch(_)
            | Error::Io(_)
            | Error::Json(_)
            | Error::Csv(_) => 2,
            Error::CapExceeded(_) | Error::Undecided(_) => 3,
            Error::InvalidExtension { .. } | Error::Projective | Error::Injective | Error::Precondition(_) => 4,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
