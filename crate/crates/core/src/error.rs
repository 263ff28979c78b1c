use crate::exactlin::Rational;

/// Failures reported by the algebra routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Mismatch(String),
    #[error("outside the domain: {0}")]
    Domain(String),
    #[error("invalid pattern: {0}")]
    Pattern(String),
    #[error("index out of range: {0}")]
    Range(String),
    #[error("unexpected shape: {0}")]
    Shape(String),
    #[error("associative element is not Lie in degree {degree}")]
    NotLie { degree: usize },
    #[error("pi(phi_2) = {found}, expected {expected}")]
    PiMismatch { found: Rational, expected: Rational },
    #[error("linear system obstructed in degree {degree}")]
    Obstructed { degree: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn mismatch(what: impl Into<String>) -> Error {
    Error::Mismatch(what.into())
}
