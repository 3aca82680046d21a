use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("resource bound exceeded: {0}")]
    Resource(String),
    #[error("heap is not fully commutative: {0}")]
    NotFc(String),
    #[error("classification failed: {0}")]
    Classification(String),
    #[error("diagram error: {0}")]
    Diagram(String),
    #[error("scalar error: {0}")]
    Scalar(String),
    #[error("snake walk error: {0}")]
    Snake(String),
    #[error("not admissible: {0}")]
    NotAdmissible(String),
    #[error("serialization error: {0}")]
    Serde(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    /// True for errors caused by exceeding a size bound.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource(_))
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serde(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
