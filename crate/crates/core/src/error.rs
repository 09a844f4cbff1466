use thiserror::Error;

/// Errors raised by the measure, set and integration machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0}")]
    UniverseMismatch(String),

    #[error("{0}")]
    NotMeasurable(String),

    #[error("{0}")]
    RepresentationOverflow(String),

    #[error("closure would exceed {limit} members")]
    SizeLimit { limit: usize },

    #[error("{0}")]
    PropertyViolated(String),

    #[error("{0}")]
    NotIntegrable(String),

    #[error("{0}")]
    NotSimpleTensor(String),
}

impl Error {
    /// Stable kind name, used by the CLI error line.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::UniverseMismatch(_) => "UniverseMismatch",
            Error::NotMeasurable(_) => "NotMeasurable",
            Error::RepresentationOverflow(_) => "RepresentationOverflow",
            Error::SizeLimit { .. } => "SizeLimit",
            Error::PropertyViolated(_) => "PropertyViolated",
            Error::NotIntegrable(_) => "NotIntegrable",
            Error::NotSimpleTensor(_) => "NotSimpleTensor",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
