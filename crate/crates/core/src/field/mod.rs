//! Exact scalars: rationals, polynomials over Q, and the rational-function
//! field Q(s) in which every impedance and form coefficient lives.

mod parse;
mod poly;
mod ratfunc;

use thiserror::Error;

pub use parse::parse_rat;
pub use poly::Poly;
pub use ratfunc::{
    default_sample_points, eval_at, field_arith, impedance, is_positive_sampled, rat_func,
    ComponentKind, FieldOp, Positivity, RatFunc,
};

/// Exact rational number with arbitrary-precision numerator and denominator.
pub type Rat = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at s = {0}")]
    PoleAtPoint(String),
    #[error("value must be positive, got {0}")]
    NonPositiveValue(String),
    #[error("empty sample set")]
    EmptySampleSet,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Convenience constructor for `n/d`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}
