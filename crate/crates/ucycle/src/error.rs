use crate::graph::ExistenceVerdict;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("class is empty")]
    EmptyClass,

    #[error("unsupported spec: {0}")]
    UnsupportedSpec(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The graph fails the Euler condition; carries the audit/witness evidence.
    #[error("graph is not Eulerian: {}", .0.describe())]
    NotEulerian(Box<ExistenceVerdict>),

    /// A formula or proof-transcription bug, not a user error.
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
