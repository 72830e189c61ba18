//! Sparse multivariate polynomials over arbitrary-precision rationals, with
//! the fraction-free linear algebra the rest of the crate is built on.
//!
//! All computations are exact. Matrix elimination uses Bareiss one-step
//! fraction-free pivoting so intermediate entries stay polynomial; nowhere is
//! a polynomial evaluated in floating point.

mod gcd;
mod matrix;
mod parse;
mod poly;

pub use gcd::{poly_gcd, poly_gcd_many, squarefree_part};
pub use matrix::{normalize_poly_vector, normalize_rational_vector, resultant, Minor, PolyMatrix};
pub use parse::parse_poly;
pub use poly::{cmp_grlex, format_rational, parse_rational, MultiPoly};

use thiserror::Error;

/// Exact rational scalar used throughout the crate.
pub type Rational = num_rational::BigRational;

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(num_bigint::BigInt::from(n))
}

/// Rational from a numerator/denominator pair. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num_bigint::BigInt::from(num), num_bigint::BigInt::from(den))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactMathError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("operands are polynomials over different variable lists")]
    VariableMismatch,
    #[error("evaluation point has {got} coordinates, polynomial has {expected} variables")]
    PointLength { expected: usize, got: usize },
    #[error("resultant of two zero polynomials is undefined")]
    ResultantBothZero,
    #[error("polynomial is not univariate in `{0}`")]
    NotUnivariate(String),
    #[error("squarefree part of the zero polynomial is undefined")]
    SquarefreeOfZero,
    #[error("matrix must have at least one row and one column")]
    EmptyMatrix,
    #[error("matrix rows have unequal lengths")]
    RaggedRows,
    #[error("matrix is {rows}x{cols}, operation needs a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("minor order {order} exceeds matrix dimensions {rows}x{cols}")]
    MinorOrder { order: usize, rows: usize, cols: usize },
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
}
