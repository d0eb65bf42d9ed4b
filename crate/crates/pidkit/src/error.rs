//! Crate-wide error type.

use std::fmt;

/// Errors surfaced by the toolkit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The requested modulus is not prime.
    NotPrime(u64),
    /// Two operands live in different fields.
    FieldMismatch { left: u64, right: u64 },
    /// Multiplicative inverse of zero requested.
    DivisionByZero,
    /// The field has too few elements for the requested point set.
    FieldTooSmall { needed: usize, size: u64 },
    /// Matrix dimensions do not line up for the requested operation.
    DimensionMismatch(String),
    /// A square matrix has no inverse.
    SingularMatrix,
    /// A 1-based row or column index falls outside the matrix.
    IndexOutOfRange { index: usize, bound: usize },
    /// Cauchy points coincide.
    InvalidPoints(String),
    /// The matrix is not in the systematic form `[I | V]` required here.
    UnsupportedForm(String),
    /// Parameters violate a precondition (counts, ranges, regimes).
    InvalidParameters(String),
    /// The requested (K, M, N) combination is outside the builder's regime.
    RegimeViolation(String),
    /// A builder produced matrices that fail its own full-rank verification.
    ConstructionFailure(String),
    /// A storage design violates coverage or capacity.
    InvalidDesign(String),
    /// A scheme document or object violates a structural invariant.
    InvalidScheme(String),
    /// A server was asked to touch a message it does not store.
    StorageViolation { server: usize, message: usize },
    /// An enumeration would exceed the configured budget.
    BudgetExceeded { estimate: u128, budget: u128 },
    /// A document failed to parse.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::FieldMismatch { left, right } => {
                write!(f, "field mismatch: F_{left} vs F_{right}")
            }
            Error::DivisionByZero => write!(f, "division by zero in prime field"),
            Error::FieldTooSmall { needed, size } => {
                write!(
                    f,
                    "field too small: need {needed} distinct points, field has {size}"
                )
            }
            Error::DimensionMismatch(msg) => write!(f, "dimension mismatch: {msg}"),
            Error::SingularMatrix => write!(f, "matrix is singular"),
            Error::IndexOutOfRange { index, bound } => {
                write!(f, "index {index} out of range (1..={bound})")
            }
            Error::InvalidPoints(msg) => write!(f, "invalid Cauchy points: {msg}"),
            Error::UnsupportedForm(msg) => write!(f, "unsupported matrix form: {msg}"),
            Error::InvalidParameters(msg) => write!(f, "invalid parameters: {msg}"),
            Error::RegimeViolation(msg) => write!(f, "regime violation: {msg}"),
            Error::ConstructionFailure(msg) => write!(f, "construction failure: {msg}"),
            Error::InvalidDesign(msg) => write!(f, "invalid storage design: {msg}"),
            Error::InvalidScheme(msg) => write!(f, "invalid scheme: {msg}"),
            Error::StorageViolation { server, message } => {
                write!(f, "server {server} does not store message {message}")
            }
            Error::BudgetExceeded { estimate, budget } => {
                write!(
                    f,
                    "enumeration of ~{estimate} candidates exceeds budget {budget}"
                )
            }
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
