//! Error type shared by every module of the crate.

use thiserror::Error;

use crate::poly::roots::UnivariateRoots;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("cannot homogenize the zero polynomial")]
    ZeroPolynomial,

    #[error("division by the zero polynomial")]
    DivisorZero,

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("root finding did not converge within the iteration cap")]
    ConvergenceFailure {
        /// Best estimates at the time of failure; flagged unreliable.
        partial: UnivariateRoots,
    },

    #[error("curve is singular")]
    SingularCurve,

    #[error("no finite inflection found numerically (every candidate classified at infinity)")]
    WitnessNotFound,

    #[error("no zero of the polynomial on the ray at angle {angle} within radius {radius}")]
    BranchNotFound { angle: f64, radius: f64 },

    #[error("point ({0}, {1}) is not strictly outside the oval")]
    PointInsideOval(f64, f64),

    #[error("tangency solver diverged: {0}")]
    SolverDivergence(String),

    #[error("degenerate tangent line: {0}")]
    DegenerateTangent(String),

    #[error("fewer than {needed} real intersection pairs on the tangent line (got {got})")]
    InsufficientPairs { needed: usize, got: usize },

    #[error("invalid oval: {0}")]
    InvalidOval(String),
}

pub type Result<T> = std::result::Result<T, Error>;
