use thiserror::Error;

/// Error type shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on the inputs was violated.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The state metric is not positive definite; Cholesky factorization
    /// found a non-positive pivot.
    #[error("degenerate metric: pivot {index} is {value:.3e}")]
    DegenerateMetric { index: usize, value: f64 },

    /// A vector handed to Gram-Schmidt was (numerically) in the span of
    /// the vectors before it.
    #[error("linearly dependent input vector at index {index}")]
    LinearDependence { index: usize },

    /// The integrator produced a non-finite state.
    #[error("trajectory blow-up at t = {time:.6}{}", match basis_index {
        Some(i) => format!(" (basis direction {i})"),
        None => String::new(),
    })]
    BlowUp { time: f64, basis_index: Option<usize> },

    /// A gramian came out with an eigenvalue too negative to be roundoff.
    #[error("gramian assembly error: {0}")]
    Assembly(String),

    /// No restart of the direct search converged; the message carries the
    /// best value seen.
    #[error("direct search failed to converge: best epsilon so far {best_epsilon:.6e}")]
    SearchFailure { best_epsilon: f64 },

    /// Every point of a consistency sweep failed.
    #[error("sweep failed: {0}")]
    SweepFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
