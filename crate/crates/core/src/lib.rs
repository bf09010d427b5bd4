//! Exact symbolic toolkit for autonomous polynomial vector fields.
//!
//! The crate covers polynomial and rational-function arithmetic over Q,
//! Gröbner bases, exact linear algebra with certified eigenvalue enclosures,
//! vector fields as derivations, cotangent prolongations, projective
//! homogenization, singularity and resonance analysis, Darboux polynomial
//! search, and a bounded-evidence certifier that assembles these pieces.

pub mod polyring;
pub mod linalg;
pub mod groebner;
pub mod vectorfield;
pub mod prolongation;
pub mod projective;
pub mod singularity;
pub mod darboux;
pub mod certifier;
pub mod fixtures;

mod error;
pub use error::Error;
