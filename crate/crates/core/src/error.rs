use thiserror::Error;

use crate::scalars::ScalarKind;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("scalar kinds differ: {0:?} vs {1:?}")]
    VariantMismatch(ScalarKind, ScalarKind),
    #[error("planes are linearly dependent")]
    DependentPlanes,
    #[error("planes do not meet in a point")]
    NotConcurrent,
    #[error("points are degenerate: {0}")]
    DegeneratePoints(String),
    #[error("could not resolve the ideal of the points: {0}")]
    ResolutionFailure(String),
    #[error("surface is singular or degenerate: {0}")]
    DegenerateSurface(String),
    #[error("line configuration is inconsistent: {0}")]
    BadConfiguration(String),
    #[error("not half of a double-six: {0}")]
    NotAHalf(String),
    #[error("lines are not pairwise skew")]
    NotSkew,
    #[error("no cubic identity of the required shape: {0}")]
    IdentityUnsolvable(String),
    #[error("linear system has no solution: {0}")]
    SolveFailure(String),
    #[error("matrix is not a linear matrix of the required shape: {0}")]
    IrreducibilityViolation(String),
    #[error("arithmetic genus is not an integer")]
    NonIntegerGenus,
    #[error("count table mismatch: {0}")]
    TableMismatch(String),
    #[error("double-six is not self-conjugate")]
    NotSelfConjugate,
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("enumeration incomplete: found {found} of {expected}")]
    IncompleteEnumeration { found: usize, expected: usize },
    #[error("field does not support this operation: {0}")]
    UnsupportedField(String),
    #[error("schema error: {0}")]
    Schema(String),
}
