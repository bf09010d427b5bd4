use thiserror::Error;

use crate::groebner::GroebnerError;
use crate::linalg::LinalgError;
use crate::polyring::{PolyError, Rational};

/// Errors surfaced by the field-level operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("{0}")]
    Invalid(String),
    #[error("operation needs polynomial components")]
    NotPolynomial,
    #[error("ambient variables differ: {0:?} vs {1:?}")]
    AmbientMismatch(Vec<String>, Vec<String>),
    #[error("malformed input: {0}")]
    Format(String),
    /// 1-based index of the first component that does not vanish.
    #[error("not a singular point: component {index} evaluates to {value}")]
    NotSingular { index: usize, value: Rational },
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    /// True for budget exhaustion anywhere in the computation.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Groebner(GroebnerError::BudgetExhausted(_)))
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}
