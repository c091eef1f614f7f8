//! Error types shared across the crate.

use alloc::vec::Vec;
use core::fmt;

/// Structural and contract errors raised by operations on validated values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The algebra has no least element, but the operation needs one.
    NotBounded,
    /// Operator map length does not match the algebra carrier.
    MismatchedAlgebra { expected: usize, got: usize },
    /// The map is not an L-operator, but the operation requires one.
    NotAnOperator,
    /// The distinguished unit was passed where a non-unit element is required.
    UnitArgument,
    /// A search space exceeds the configured cap.
    Capacity { cap: usize, requested: usize },
    /// Pointwise infimum does not exist at this element.
    InfUndefined { at: usize },
    /// The pair is not orthogonal, so the orthogonal sum is undefined.
    NotOrthogonal { x: usize, y: usize },
    /// An empty family was passed where a nonempty one is required.
    EmptyFamily,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotBounded => write!(f, "algebra has no least element"),
            Error::MismatchedAlgebra { expected, got } => {
                write!(f, "operator is over a different carrier: expected {expected} elements, got {got}")
            }
            Error::NotAnOperator => write!(f, "map is not an L-operator"),
            Error::UnitArgument => write!(f, "the unit is not a valid argument here"),
            Error::Capacity { cap, requested } => {
                write!(f, "search space for {requested} exceeds cap {cap}")
            }
            Error::InfUndefined { at } => {
                write!(f, "pointwise infimum does not exist at element {at}")
            }
            Error::NotOrthogonal { x, y } => write!(f, "elements {x} and {y} are not orthogonal"),
            Error::EmptyFamily => write!(f, "family must be nonempty"),
        }
    }
}

/// Failure to evaluate the refinement product on a pair of blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GridError {
    /// `minus` found several candidates for x_i odot y_j.
    Ambiguous { i: usize, j: usize, candidates: Vec<usize> },
    /// `minus` found no candidate for x_i odot y_j.
    NoDifference { i: usize, j: usize },
    /// The algebra is unbounded.
    NotBounded,
}

impl fmt::Display for GridError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridError::Ambiguous { i, j, candidates } => write!(
                f,
                "odot is ambiguous at block pair ({i},{j}): {} candidates",
                candidates.len()
            ),
            GridError::NoDifference { i, j } => {
                write!(f, "odot has no value at block pair ({i},{j})")
            }
            GridError::NotBounded => write!(f, "algebra has no least element"),
        }
    }
}
