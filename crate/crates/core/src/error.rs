use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix contains inf entries; {0} requires a finite matrix")]
    InfiniteEntry(&'static str),
    #[error("index {index} out of range (size {size})")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("scale factor must be finite")]
    InfiniteScale,
    #[error("no positive gap: every column is constant")]
    NoPositiveGap,
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("singular system")]
    Singular,
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("degree mismatch at ({row}, {col}): expected {expected}, found {found}")]
    DegreeMismatch {
        row: usize,
        col: usize,
        expected: String,
        found: String,
    },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("construction failed at {step}: {msg}")]
    Construction { step: String, msg: String },
    #[error("unknown example matrix {0:?}")]
    UnknownExample(String),
}

impl Error {
    pub(crate) fn construction(step: &str, msg: impl Into<String>) -> Self {
        Error::Construction {
            step: step.to_string(),
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
