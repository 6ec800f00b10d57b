use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("expected a polynomial of degree {expected}, got degree {found}")]
    DegreeMismatch { expected: String, found: usize },

    #[error("zero leading coefficient")]
    ZeroLeadingCoefficient,

    #[error("empty or non-finite coefficient vector")]
    InvalidCoefficients,

    #[error("root certification failed: |D| = {disc:e} is below the threshold {threshold:e}")]
    IllConditioned { disc: f64, threshold: f64 },

    #[error("integrand diverges at the repeated real root near x = {root}")]
    DivergentAtMultipleRoot { root: f64 },

    #[error("tail diverges: degree {degree} times exponent {exponent} must exceed 1")]
    TailDivergence { degree: usize, exponent: f64 },

    #[error(
        "no convergence: estimate {value} with error {abs_error:e} after {n_evals} evaluations on {segments} segments"
    )]
    NoConvergence {
        value: f64,
        abs_error: f64,
        n_evals: usize,
        segments: usize,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("exponent magnitude {0:e} exceeds 700 inside the integration box")]
    Overflow(f64),

    #[error(
        "finite-difference step too small: noise {noise:e} exceeds the allowed bound {bound:e}"
    )]
    StepTooSmall { noise: f64, bound: f64 },

    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },
}

impl Error {
    pub(crate) fn degree(expected: impl Into<String>, found: usize) -> Self {
        Error::DegreeMismatch {
            expected: expected.into(),
            found,
        }
    }
}
