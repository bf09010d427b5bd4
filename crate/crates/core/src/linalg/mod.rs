//! Exact rational matrices, characteristic polynomials, nullspaces and
//! certified complex root enclosures.

mod matrix;
mod roots;
pub mod univariate;

pub use matrix::{char_poly, char_poly_in, nullspace, QMatrix};
pub use roots::{isolate_roots, isolate_roots_with_multiplicity, refine_enclosure, QComplex, RootEnclosure};
pub use univariate::{rational_roots, UniPoly};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("zero polynomial has no root enclosures")]
    ZeroPolynomial,
    #[error("polynomial is not univariate")]
    NotUnivariate,
    #[error("root enclosures could not be certified")]
    CertificationFailed,
}
