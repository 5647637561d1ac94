use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not symmetric positive definite: {0}")]
    NotPositiveDefinite(String),

    #[error("point {0:?} does not lie on the lattice")]
    NotOnLattice(Vec<f64>),

    #[error("enumeration would exceed the point budget of {limit}")]
    PointBudgetExceeded { limit: usize },

    #[error("truncation radius {radius} exceeds the cap {cap}")]
    RadiusCapExceeded { radius: f64, cap: f64 },

    #[error("parameter outside the natural parameter space: {0}")]
    Domain(String),

    #[error("Newton iteration did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("Hessian is numerically singular")]
    SingularHessian,

    #[error("Newton iterate left the positive definite cone after step damping")]
    DomainExit,

    #[error("sample covariance is not positive definite")]
    DegenerateSample,

    #[error("bisection bracket has no sign change (g(lo) = {lo:e}, g(hi) = {hi:e})")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("Hölder exponents are not conjugate: 1/{alpha} + 1/{beta} != 1")]
    ConjugateExponent { alpha: f64, beta: f64 },

    #[error("only {accepted} of {requested} samples accepted after {proposals} proposals")]
    AcceptanceStall {
        accepted: usize,
        requested: usize,
        proposals: usize,
    },

    #[error("box boundary mass {mass:e} exceeds the tail check {limit:e}")]
    TailTooFat { mass: f64, limit: f64 },
}

impl Error {
    /// True for failures of the numerics (as opposed to malformed input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Domain(_)
                | Error::NoConvergence { .. }
                | Error::SingularHessian
                | Error::DomainExit
                | Error::NoSignChange { .. }
                | Error::AcceptanceStall { .. }
                | Error::PointBudgetExceeded { .. }
                | Error::RadiusCapExceeded { .. }
                | Error::TailTooFat { .. }
                | Error::DegenerateSample
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
