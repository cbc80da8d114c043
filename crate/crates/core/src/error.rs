//! Error type shared by all modules.

use std::fmt;

/// Structured errors for every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Series inversion or substitution requires a nonzero constant term.
    ZeroConstantTerm,
    /// Composition requires the inner series to have zero constant term.
    NonzeroConstantInner,
    /// Logarithms and real powers require constant term exactly 1.
    ConstantTermNotOne,
    /// Exponentials require constant term exactly 0.
    NonzeroConstantTerm,
    /// Binary matrix operation on matrices of different dimension.
    DimMismatch { left: usize, right: usize },
    /// Inversion of a triangular matrix with a zero diagonal entry.
    SingularDiagonal { index: usize },
    /// Matrix logarithm/power requires all diagonal entries equal to 1.
    NonUnitDiagonal { index: usize },
    /// Row, column or coefficient index beyond the stored range.
    IndexOutOfRange { index: usize, limit: usize },
    /// A Riordan pair or Hadamard-factor description violates its invariants.
    InvalidSpec(String),
    /// Binary operation on elements of groups with different parameters.
    ParameterMismatch,
    /// A family or membership constructor was given parameters outside its
    /// admissible range (a denominator would vanish within the truncation).
    ConstraintViolation(String),
    /// A coefficient sequence violates the invariants of its type.
    InvalidSequence(String),
    /// Binary operation on values attached to different zero-Pascal specs.
    SpecMismatch,
    /// A nilpotent/unipotent constructor was given a coefficient outside the
    /// allowed residue classes.
    SupportViolation { index: usize },
    /// Internal assertion: a product that is guaranteed closed failed to be.
    ClosureViolation,
    /// The square-root factorization requires an involution.
    NotInvolution,
    /// Malformed textual input (rational literal or spec literal).
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroConstantTerm => write!(f, "constant term must be nonzero"),
            Error::NonzeroConstantInner => {
                write!(f, "inner series of a composition must have zero constant term")
            }
            Error::ConstantTermNotOne => write!(f, "constant term must be exactly 1"),
            Error::NonzeroConstantTerm => write!(f, "constant term must be exactly 0"),
            Error::DimMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right}")
            }
            Error::SingularDiagonal { index } => {
                write!(f, "zero diagonal entry at index {index}")
            }
            Error::NonUnitDiagonal { index } => {
                write!(f, "diagonal entry at index {index} is not 1")
            }
            Error::IndexOutOfRange { index, limit } => {
                write!(f, "index {index} out of range (limit {limit})")
            }
            Error::InvalidSpec(msg) => write!(f, "invalid spec: {msg}"),
            Error::ParameterMismatch => write!(f, "group parameters differ"),
            Error::ConstraintViolation(msg) => write!(f, "constraint violation: {msg}"),
            Error::InvalidSequence(msg) => write!(f, "invalid sequence: {msg}"),
            Error::SpecMismatch => write!(f, "zero-Pascal specs differ"),
            Error::SupportViolation { index } => {
                write!(f, "nonzero coefficient at index {index} outside the allowed residues")
            }
            Error::ClosureViolation => write!(f, "internal closure assertion failed"),
            Error::NotInvolution => write!(f, "matrix is not an involution"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
