use thiserror::Error;

use crate::exactnum::Rational;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("discriminant must be nonnegative, got {0}")]
    NegativeDiscriminant(Box<Rational>),

    #[error("cannot combine elements of Q(sqrt({left})) and Q(sqrt({right}))")]
    FieldMismatch {
        left: Box<Rational>,
        right: Box<Rational>,
    },

    #[error("Q(sqrt({from})) does not embed into Q(sqrt({into})): ratio is not a rational square")]
    NotEmbeddable {
        from: Box<Rational>,
        into: Box<Rational>,
    },

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid parameter {name} = {value}: {requirement}")]
    InvalidParameter {
        name: &'static str,
        value: String,
        requirement: &'static str,
    },

    #[error("sequence has {len} terms, Hankel matrix of order {order} needs {needed}")]
    SequenceTooShort {
        len: usize,
        order: usize,
        needed: usize,
    },

    #[error("cannot parse {0:?} as an exact number")]
    Parse(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}
