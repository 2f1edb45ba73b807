use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("function is not defined at element {element}")]
    Evaluation { element: String },

    #[error("convolution support grew to {size} elements, cap is {cap}")]
    SupportCap { size: usize, cap: usize },

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("not a hypergroup: {0}")]
    NotAHypergroup(String),

    #[error("degree {degree} is outside the recurrence table (max {max})")]
    DegreeOutOfRange { degree: usize, max: usize },

    #[error("singular system: {0}")]
    Singular(String),

    #[error("value out of range: {0}")]
    Range(String),

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
