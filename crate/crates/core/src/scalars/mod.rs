//! Exact coefficients: rational functions in declared parameters over the
//! Gaussian rationals, with a conjugation involution and point evaluation.

mod gauss;
mod mpoly;
mod scalar;

use std::collections::BTreeMap;

use thiserror::Error;

pub use gauss::GaussRational;
pub use mpoly::{MPoly, PMono};
pub use scalar::{ParamRules, Parameter, Scalar, StarRule};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by a zero scalar")]
    DegenerateScalar,
    #[error("parameter `{0}` has no assigned value")]
    UnboundParameter(String),
    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,
    #[error("parameter `{0}` declared with two different star rules")]
    ConflictingStarRule(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn scalar_arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar, ScalarError> {
    Ok(match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
        ArithOp::Div => a.div(b)?,
    })
}

pub fn scalar_conjugate(a: &Scalar, rules: &ParamRules) -> Scalar {
    a.conjugate(rules)
}

pub fn scalar_eval(a: &Scalar, assign: &BTreeMap<String, GaussRational>) -> Result<GaussRational, ScalarError> {
    a.eval(assign)
}
