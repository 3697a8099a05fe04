use thiserror::Error;

/// Errors produced by the workbench library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is singular (pivot {pivot:e} below threshold {threshold:e})")]
    SingularMatrix { pivot: f64, threshold: f64 },
    #[error("matrix is not symmetric (max asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },
    #[error("matrix is not triangular")]
    NotTriangular,
    #[error("stiffness design is infeasible: {0}")]
    DesignInfeasible(String),
    #[error("wrench is expressed in the {found:?} frame, expected {expected:?}")]
    WrongFrame {
        expected: crate::admittance::Frame,
        found: crate::admittance::Frame,
    },
    #[error("invalid peg pose: {0}")]
    InvalidPose(String),
    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
