use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input violated a documented precondition.
    #[error("validation error: {0}")]
    Validation(String),

    /// The photon-number cutoff is too small for the requested amplitudes.
    #[error("truncation too small: dim {got} < required {required} ({context})")]
    Truncation {
        got: usize,
        required: usize,
        context: String,
    },

    /// A ratio of amplitudes has a vanishing denominator.
    #[error("pole: {0}")]
    Pole(String),

    /// Both amplitudes of a field vanish, so no angles are defined.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// The ordering parameter s = 1 makes 1 - s vanish.
    #[error("singular ordering parameter s = {0}")]
    SingularOrder(f64),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}
