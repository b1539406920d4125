use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Failures of the library operations.
///
/// `ResourceLimit` is kept apart from the mathematical failures so callers
/// can tell "the input is wrong" from "the budget was too small".
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid origami: {0}")]
    InvalidOrigami(String),
    #[error("origami is not in H(2): {0}")]
    NotInH2(String),
    #[error("origami is not primitive")]
    NotPrimitive,
    #[error("invalid two-cylinder coordinates: {0}")]
    InvalidCoords(String),
    #[error("matrix {0:?} does not have determinant 1")]
    NotUnimodular([i64; 4]),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}
