use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ground set must contain at least one variable")]
    EmptyGround,
    #[error("ground set supports at most {max} variables, got {got}")]
    TooManyVariables { max: usize, got: usize },
    #[error("duplicate variable label `{0}`")]
    DuplicateLabel(String),
    #[error("variable `{0}` is not in the ground set")]
    UnknownLabel(String),
    #[error("ground sets differ: [{left}] vs [{right}]")]
    GroundMismatch { left: String, right: String },
    #[error("fresh variable `{0}` already belongs to the ground set")]
    FreshLabelCollision(String),
    #[error("subset must be nonempty")]
    EmptySubset,
    #[error("invalid substitution: {0}")]
    InvalidSubstitution(String),
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("invalid rational `{0}`")]
    InvalidRational(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("malformed JSON: {0}")]
    Json(String),
}

impl Error {
    /// Short machine-readable code used in CLI error reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::EmptyGround | Error::TooManyVariables { .. } | Error::DuplicateLabel(_) => {
                "invalid-ground"
            }
            Error::UnknownLabel(_) => "unknown-label",
            Error::GroundMismatch { .. } => "ground-mismatch",
            Error::FreshLabelCollision(_) => "fresh-collision",
            Error::EmptySubset => "empty-subset",
            Error::InvalidSubstitution(_) => "invalid-substitution",
            Error::InvalidDistribution(_) => "invalid-distribution",
            Error::InvalidRational(_) => "invalid-rational",
            Error::Precondition(_) => "precondition",
            Error::Syntax { .. } => "syntax",
            Error::Json(_) => "json",
        }
    }

    pub fn position(&self) -> Option<usize> {
        match self {
            Error::Syntax { position, .. } => Some(*position),
            _ => None,
        }
    }
}
