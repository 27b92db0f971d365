//! Shared error type for lattice construction and operations.

use thiserror::Error;

/// Errors raised by lattice constructions and operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("gram matrix is degenerate")]
    Degenerate,
    #[error("gram matrix is not square")]
    NotSquare,
    #[error("operation requires an integral lattice")]
    NotIntegral,
    #[error("operation requires an even lattice")]
    NotEven,
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("rows are linearly dependent")]
    DependentRows,
    #[error("not a sublattice: a row is not an integral combination of the target basis")]
    NotSublattice,
    #[error("rank mismatch between sublattice and target")]
    RankMismatch,
    #[error("ambient lattices differ")]
    AmbientMismatch,
    #[error("unknown lattice name: {0}")]
    UnknownName(String),
    #[error("scale factor must be positive")]
    NonPositiveScale,
    #[error("sublattice is not primitive in its ambient lattice")]
    NotPrimitive,
    #[error("vector is not isotropic")]
    NotIsotropic,
    #[error("isotropic vector has divisor {0} > 1, cannot split a hyperbolic plane")]
    BadDivisor(String),
    #[error("projection index set is not an orthogonal summand cut")]
    NotASummandCut,
    #[error("zero is not allowed here: {0}")]
    ZeroArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}
