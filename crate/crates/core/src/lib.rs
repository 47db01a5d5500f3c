//! Pointed harmonic volumes of the hyperelliptic curves w² = z^{2g+2} − 1
//! at a Weierstrass point, computed three ways: exact cyclotomic closed
//! forms, a ℤ/2 counting formula, and numeric Chen iterated integrals.

pub mod analytic;
pub mod combinat;
pub mod error;
pub mod exactfield;
pub mod homology;
pub mod quadrature;
pub mod sample;

pub use error::{Error, Result};
