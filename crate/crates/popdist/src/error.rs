//! Crate-wide error type.

use std::fmt;

/// Errors produced by validation and by value-dependent series operations.
///
/// Structural misuse (e.g. mixing truncation orders in ring operations) is a
/// programming error and panics instead; see the `series` module docs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input is not a permutation of 1..n.
    InvalidPermutation(String),
    /// Permutation length exceeds the supported maximum.
    LengthLimit { len: usize, max: usize },
    /// A poset definition is malformed (labels out of range, cycles, size 0).
    InvalidPoset(String),
    /// An enumeration request exceeds the configured bound.
    EnumerationLimit { n: usize, max: usize },
    /// Series inversion/division needs a nonzero scalar leading coefficient.
    NonScalarLeading(String),
    /// Division or expansion by a series/polynomial with zero constant term.
    ZeroConstantTerm,
    /// Square root of a series whose constant term is not a rational square.
    NotARationalSquare(String),
    /// Numerator has lower x-valuation than the denominator.
    DivisionValuation { num: usize, den: usize },
    /// Fixed-point factor has a nonzero x-constant term, so iteration would
    /// not contract.
    NonContractive,
    /// Solver called with k < 2.
    KTooSmall(usize),
    /// Unknown closed-form identifier.
    UnknownClosedForm(String),
    /// Input permutation is not separable.
    NotSeparable(String),
    /// Decomposition requested for the empty permutation.
    EmptyPermutation,
    /// Malformed JSON input.
    Json(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidPermutation(s) => write!(f, "invalid permutation: {s}"),
            Error::LengthLimit { len, max } => {
                write!(f, "permutation length {len} exceeds maximum {max}")
            }
            Error::InvalidPoset(s) => write!(f, "invalid poset: {s}"),
            Error::EnumerationLimit { n, max } => {
                write!(f, "enumeration length {n} exceeds bound {max} (override with POPDIST_MAX_N)")
            }
            Error::NonScalarLeading(s) => {
                write!(f, "leading x-coefficient must be a nonzero scalar, got {s}")
            }
            Error::ZeroConstantTerm => write!(f, "constant term is zero"),
            Error::NotARationalSquare(s) => {
                write!(f, "constant term {s} is not the square of a rational")
            }
            Error::DivisionValuation { num, den } => {
                write!(f, "numerator x-valuation {num} is below denominator x-valuation {den}")
            }
            Error::NonContractive => {
                write!(f, "fixed-point factor has a nonzero x-constant term")
            }
            Error::KTooSmall(k) => write!(f, "pattern length k must be at least 2, got {k}"),
            Error::UnknownClosedForm(s) => write!(f, "unknown closed form id: {s}"),
            Error::NotSeparable(s) => write!(f, "permutation {s} is not separable"),
            Error::EmptyPermutation => write!(f, "operation undefined for the empty permutation"),
            Error::Json(s) => write!(f, "malformed JSON: {s}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
