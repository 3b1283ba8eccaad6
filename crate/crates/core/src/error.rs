use alloc::string::String;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial division leaves a nonzero remainder")]
    DivisionNotExact,
    #[error("series truncated too early: result would be known through order {0}")]
    TruncationTooShort(i64),
    #[error("linear form has {form} components but the operator has order {order}")]
    OrderMismatch { order: usize, form: usize },
    #[error("initial linear form is identically zero")]
    ZeroInitialForm,
    #[error("operator does not satisfy the degree conditions: {0}")]
    ConditionViolated(&'static str),
    #[error("scaling polynomial is zero")]
    ZeroScalar,
    #[error("operator must have order at least 1")]
    ZeroOrder,
    #[error("zero denominator in series coefficient at n = {0}")]
    ZeroDenominator(usize),
    #[error("invalid factorial base: {0}")]
    InvalidFactorialBase(String),
    #[error("invalid hypergeometric parameters: {0}")]
    InvalidParameters(String),
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("expression mixes D and T at byte {offset}")]
    MixedBasis { offset: usize },
    #[error("negative power at byte {offset}")]
    NegativePower { offset: usize },
    #[error("linear form has no components")]
    EmptyForm,
}
