//! Exact computer algebra and numerical dynamics for outer billiards around
//! plane algebraic ovals.
//!
//! The crate splits into an exact half and a numeric half. The exact half
//! ([`poly`], [`operators`], [`integrability`]) works over arbitrary-precision
//! rationals: polynomial arithmetic, graded-lex division, Sylvester
//! resultants, the symplectic-gradient operators H and W, and the
//! integrability certification pipeline. The numeric half ([`curves`],
//! [`dynamics`]) locates complex inflection points through resultant
//! elimination plus Aberth root finding, and iterates the outer billiard map
//! with tangency solving, orbit invariants and Desargues involution checks.

pub mod curves;
pub mod dynamics;
pub mod error;
pub mod integrability;
pub mod operators;
pub mod poly;
pub mod random;
pub mod rational;

pub use error::{Error, Result};
pub use poly::{BivariatePoly, TrivariatePoly, Var};
pub use rational::Rational;

/// Complex scalar used by the numeric half.
pub type ComplexValue = num_complex::Complex64;
