use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("invalid argument: {0}")]
    Argument(String),

    /// A size cap was exceeded (enumeration, brute force, exact search).
    #[error("capability exceeded: {0}")]
    Capability(String),

    /// The operation is undefined for this input (e.g. min degree < 2 for `L`).
    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("numeric failure: {message} (matrix {fingerprint})")]
    Numeric { message: String, fingerprint: String },

    #[error("reconstruction failed: {0}")]
    Reconstruction(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }

    /// Process exit code used by the CLI: 2 usage / I/O, 3 capability cap.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Capability(_) => 3,
            _ => 2,
        }
    }
}
