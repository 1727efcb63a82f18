use thiserror::Error;

/// Errors raised across circuit analysis, noise inversion and simulation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported gate: {0}")]
    UnsupportedGate(String),

    /// The gate maps the given Z-string to an operator that is not a Z-string.
    #[error("gate {gate} does not map Z-string {string} to a Z-string")]
    NotZClosed { gate: String, string: String },

    #[error("unsupported noise kind for this operation: {0}")]
    UnsupportedKind(String),

    #[error("singular channel: eigenvalue {eigenvalue:e} on X-pattern {pattern:#b}")]
    SingularChannel { pattern: usize, eigenvalue: f64 },

    #[error("guard exceeded: {0}")]
    GuardExceeded(String),

    #[error("invalid sample count: {0}")]
    InvalidSamples(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("degenerate vector: {0}")]
    DegenerateVector(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::GuardExceeded(_) => 2,
            Error::SingularChannel { .. } => 3,
            Error::Parse { .. } => 4,
            _ => 1,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
