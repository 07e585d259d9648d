//! Error type shared across the crate.

use alloc::string::String;
use core::fmt;

/// Errors produced by constructors, projections, drivers and estimators.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Operand dimensions do not agree.
    DimensionMismatch { expected: usize, got: usize },
    /// Three distinct collinear points admit no circumcenter.
    DegenerateCircumcenter,
    /// A precondition on an argument failed; the message names it.
    InvalidArgument(String),
    /// The problem does not meet a method's structural requirement
    /// (e.g. CRM needs the second set to be an affine manifold).
    InvalidProblem(String),
    /// An iterative projection did not converge, usually a symptom of a
    /// non-convex function oracle.
    ProjectionFailure(String),
    /// An iterate became non-finite at the given iteration.
    NumericalFailure { iteration: usize },
    /// Too few usable entries to estimate a rate.
    InsufficientData { needed: usize, got: usize },
    /// The requested analysis is outside the supported problem class.
    UnsupportedProblem(String),
    /// An instance family assumption was violated; the message names it.
    InvalidInstance(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::DegenerateCircumcenter => {
                write!(f, "degenerate circumcenter: three distinct collinear points")
            }
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::InvalidProblem(msg) => write!(f, "invalid problem: {msg}"),
            Error::ProjectionFailure(msg) => write!(f, "projection failure: {msg}"),
            Error::NumericalFailure { iteration } => {
                write!(f, "non-finite iterate at iteration {iteration}")
            }
            Error::InsufficientData { needed, got } => {
                write!(f, "insufficient data: need {needed} usable entries, got {got}")
            }
            Error::UnsupportedProblem(msg) => write!(f, "unsupported problem: {msg}"),
            Error::InvalidInstance(msg) => write!(f, "invalid instance: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
