use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

/// Position-carrying polynomial syntax error. `offset` is a byte offset into
/// the parsed text.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{message} at offset {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError {
            offset,
            message: message.into(),
        }
    }
}

/// Which resource cap a Groebner computation ran into.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BudgetKind {
    BasisSize,
    ReductionSteps,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not a prime modulus")]
    NotPrime(u64),
    #[error("literal has a denominator divisible by the characteristic {0}")]
    NonInvertibleLiteral(u64),
    #[error("invalid variable table: {0}")]
    InvalidVariables(String),
    #[error("unknown variable `{name}` at offset {offset}")]
    UnknownVariable { name: String, offset: usize },
    #[error("variable `{0}` is not declared")]
    UndeclaredVariable(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("operands live in different polynomial rings")]
    AmbientMismatch,
    #[error("no image given for variable `{0}`")]
    UnassignedVariable(String),
    #[error("relation `{relation}` is not homogeneous: it mixes degrees {degrees:?}")]
    NotHomogeneous { relation: String, degrees: Vec<u32> },
    #[error("relation `{0}` is a nonzero constant")]
    ConstantRelation(String),
    #[error("budget exceeded ({kind:?}, limit {limit})")]
    BudgetExceeded { kind: BudgetKind, limit: u64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
}
