use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed or inconsistent input: dimensions, indices, non-simplex vectors.
    #[error("invalid input: {0}")]
    Input(String),

    /// The bimatrix game has no additively separable payoff sum within tolerance.
    #[error("payoff sum is not additively separable (tetrad residual {residual:e})")]
    NotSeparable { residual: f64 },

    #[error("solver failure: {0}")]
    SolverFailure(String),

    /// A computed pair did not survive its own certificate. Indicates a numerical problem.
    #[error("certification failure: {0}")]
    CertificationFailure(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}
