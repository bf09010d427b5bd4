//! Exact rationals, sparse multivariate polynomials, rational functions and
//! the text grammar they are parsed from and printed to.

mod gcd;
mod monomial;
mod parse;
mod poly;
pub mod rational;
mod ratfunc;

pub use gcd::{gcd, gcd_many, lcm};
pub use monomial::{Ambient, Monomial};
pub use parse::{parse_expression, parse_poly};
pub use poly::{Degree, Poly};
pub use ratfunc::RatFunc;
pub use rational::Rational;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("expected {expected} coordinates, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("expression is not a polynomial")]
    NotPolynomial,
}
