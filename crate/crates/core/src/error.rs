use thiserror::Error;

/// Errors raised by the numerical kernels and the solver pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid signature matrix: {0}")]
    InvalidSignature(String),
    #[error("invalid tolerance configuration: {0}")]
    InvalidTolerance(String),
    #[error("matrix is not symmetric (asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },
    #[error("matrix is not positive semidefinite (smallest eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },
    #[error("matrix is singular (smallest eigenvalue {min_eigenvalue:e})")]
    Singular { min_eigenvalue: f64 },
    #[error("the constraint Gram matrix V#V is semidefinite")]
    SemidefiniteB,
    #[error("midpoint pencil matrix is not positive definite (smallest eigenvalue {min_eigenvalue:e})")]
    SingularM { min_eigenvalue: f64 },
    #[error("interval kind does not support this operation: {0}")]
    WrongIntervalKind(String),
    #[error("boundary eigenspace N{side} of G is trivial")]
    BoundaryEigenspaceMissing { side: Side },
    #[error("secular parameter {tau} outside [-{kappa}, {kappa}]")]
    SecularDomain { tau: f64, kappa: f64 },
    #[error("constraint map V is not surjective (rank {rank} < {rows})")]
    RankDeficientV { rank: usize, rows: usize },
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error("no convergence after {0} iterations")]
    NoConvergence(usize),
}

/// Which half of the spectral split an object refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Plus,
    Minus,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Plus => write!(f, "+"),
            Side::Minus => write!(f, "-"),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
