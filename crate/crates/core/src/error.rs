use thiserror::Error;

use crate::quadrature::QuadResult;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("quadrature did not converge after {subdivisions} subdivisions (value {}, error estimate {})", partial.value, partial.abs_error_estimate)]
    QuadratureNonConvergence {
        partial: QuadResult,
        subdivisions: usize,
    },

    #[error("series did not converge after {terms} terms (partial sum {})", partial.value)]
    SeriesNonConvergence { partial: QuadResult, terms: u32 },

    /// A failure inside a larger computation, tagged with where it happened.
    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<Error>,
    },

    #[error("finite-difference extrapolation disagrees by {disagreement:e} (relative), step too large")]
    StepTooLarge { disagreement: f64 },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn context(self, context: impl Into<String>) -> Self {
        Error::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }

    /// The innermost error, with any context layers stripped.
    pub fn root(&self) -> &Error {
        match self {
            Error::Context { source, .. } => source.root(),
            e => e,
        }
    }

    pub fn is_invalid_input(&self) -> bool {
        matches!(self.root(), Error::InvalidInput(_))
    }

    pub fn is_non_convergence(&self) -> bool {
        matches!(
            self.root(),
            Error::QuadratureNonConvergence { .. }
                | Error::SeriesNonConvergence { .. }
                | Error::StepTooLarge { .. }
        )
    }
}
