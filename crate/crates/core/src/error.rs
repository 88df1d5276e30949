use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied argument is outside its documented range.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// The iterative eigensolver ran out of its iteration budget.
    #[error("eigensolver did not converge after {iterations} iterations (residual norm {residual:.3e})")]
    Convergence { iterations: usize, residual: f64 },

    /// The request would exceed a memory or size cap.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// An operation needed eigenvectors that were not computed.
    #[error("missing eigenvectors: {0}")]
    MissingVectors(String),

    /// An internal cross-check failed; indicates a bug, not bad input.
    #[error("internal consistency violation: {0}")]
    Consistency(String),

    /// A matrix handed to a concurrence kernel is not a physical state.
    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    /// An error from a lower layer, annotated with where it happened.
    #[error("at {context}: {source}")]
    Annotated {
        context: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn annotate(self, context: impl Into<String>) -> Error {
        Error::Annotated {
            context: context.into(),
            source: Box::new(self),
        }
    }
}
