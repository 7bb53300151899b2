//! Exact arithmetic: rationals, polynomials, dense linear algebra and subspace limits.

mod decompose;
mod limit;
mod matrix;
mod poly;
mod polymatrix;
mod qpoly;
mod rational;
mod upoly;

pub use decompose::{
    joint_invariant_decomposition, simple_spectrum_check, InvariantBlock, JointLabel,
};
pub use limit::{limit_of_span, limit_of_vector_families, LaurentVector};
pub use matrix::{intersect, same_span, span_contains, span_rank, Echelon, QMatrix, Rref};
pub use poly::{Exponents, MultiPoly, PolyJson, Var, VarSet};
pub use polymatrix::PolyMatrix;
pub use qpoly::QPolynomial;
pub use rational::{denominator_lcm, Rational};
pub use upoly::{primitive_integer_coeffs, UPoly};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("polynomials live over different variable sets")]
    VariableMismatch,
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("expected {expected} values, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("negative exponent for non-Laurent variable {0:?}")]
    NegativeExponent(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is singular")]
    Singular,
    #[error("input matrices do not commute")]
    NonCommuting,
    #[error("columns are dependent at generic parameter")]
    GenericallyDependent,
}
