use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("basis of size {size} exceeds the cap {cap}")]
    TableCap { size: usize, cap: usize },
    #[error("classes live in different rings")]
    RingMismatch,
    #[error("label {0} is not in the basis")]
    UnknownLabel(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("bundle {0} is not defined on this ring")]
    InvalidBundle(String),
    #[error("{what}: residual {residual:.3e} exceeds {tol:.1e}")]
    Residual { what: String, residual: f64, tol: f64 },
    #[error("value {value} is not within {tol:.1e} of an integer")]
    NonIntegral { value: f64, tol: f64 },
    #[error("series tail not converged: {0}")]
    TailNotConverged(String),
    #[error("eigenvalue computation failed: {0}")]
    Eigen(String),
    #[error("phase {0} is not admissible for the markings")]
    InadmissiblePhase(f64),
    #[error("not semiorthonormal: {0}")]
    NotSemiorthonormal(String),
    #[error("markings {0} and {1} collide with non-orthogonal vectors")]
    Collision(usize, usize),
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}
