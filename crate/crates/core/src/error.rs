use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("degree overflow: need moments up to degree {needed}, sequence has order {available}")]
    DegreeOverflow { needed: u32, available: u32 },

    #[error("matrix is not positive definite: pivot {index} (monomial {monomial}) = {value:e}")]
    NotPositiveDefinite { index: usize, monomial: String, value: f64 },

    #[error("localizing matrix of generator {generator} ({poly}) is singular: {reason}")]
    SingularLocalizing { generator: usize, poly: String, reason: String },

    #[error("insufficient quadrature order: level {level} cannot integrate degree {degree} (need level >= {required})")]
    InsufficientOrder { level: usize, degree: u32, required: usize },

    #[error("sampling acceptance too low: {accepted} of {drawn} samples fell inside the set; increase the sample budget")]
    LowAcceptance { accepted: usize, drawn: usize },

    #[error("start point is infeasible: block of generator {generator} is not positive definite")]
    InfeasibleStart { generator: usize },

    #[error("solver did not converge within {iterations} iterations (Newton decrement {decrement:e})")]
    MaxIterations { iterations: usize, decrement: f64 },

    #[error("line search stalled at iteration {iteration} (Newton decrement {decrement:e})")]
    LineSearchFailed { iteration: usize, decrement: f64 },

    #[error("Hessian is numerically singular")]
    SingularHessian,

    #[error("report is not converged")]
    NotConverged,

    #[error("identity violated: max residual coefficient {residual:e}; residual = {poly}")]
    IdentityViolated { residual: f64, poly: String },

    #[error("invalid finite-difference step {0}")]
    InvalidStep(f64),

    #[error("order {t} is too small for every generator")]
    OrderTooSmall { t: u32 },

    #[error("unknown model or set `{0}`")]
    UnknownModel(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    Invalid(String),
}
