use thiserror::Error;

use crate::varset::VarSet;

/// Errors produced by the analysis library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("duplicate term for variable set {0}")]
    DuplicateTerm(VarSet),
    #[error("zero coefficient for variable set {0}")]
    ZeroCoefficient(VarSet),
    #[error("variable set {mask} does not fit in {n} variables")]
    MaskOutOfRange { mask: VarSet, n: usize },
    #[error("value {value} at position {index} is not -1 or +1")]
    BadDomainValue { index: usize, value: i64 },
    #[error("expected {expected} domain values, got {got}")]
    WrongArity { expected: usize, got: usize },
    #[error("length {0} is not a power of two")]
    BadLength(usize),
    #[error("{n} variables exceeds the cap of {cap}")]
    TooManyVariables { n: usize, cap: usize },
    #[error("exponent p = {0} must be at least 1")]
    BadExponent(f64),
    #[error("bad exponents q = {q}, p = {p}: {reason}")]
    BadExponents { q: f64, p: f64, reason: &'static str },
    #[error("width {rho} is positive but there are no terms")]
    InconsistentProfile { rho: u64 },
    #[error("bad arguments: {0}")]
    BadArgs(String),
    #[error("two equations share the left-hand side {0}")]
    DuplicateLhs(VarSet),
    #[error("equation {0} has an empty left-hand side")]
    EmptyLhs(usize),
    #[error("equation {index} has non-positive weight {weight}")]
    NonpositiveWeight { index: usize, weight: i64 },
    #[error("equation {index} has right-hand side {rhs}, expected -1 or 1")]
    BadRhs { index: usize, rhs: i64 },
    #[error("parameter k = {0} is negative")]
    NegativeK(i64),
    #[error("the system has no equations")]
    EmptySystem,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
