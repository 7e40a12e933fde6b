//! Exact computation with integer-valued valuations on convex bodies of the
//! line and the plane.
//!
//! Everything is generic over an exact [`Scalar`]; the aliases below fix it
//! to arbitrary-precision rationals, which is what the command-line tool and
//! the test suites use.

pub mod admissibility;
pub mod geom;
pub mod line;
pub mod product;
pub mod scalar;
pub mod structure;
pub mod valuation;

pub use scalar::{parse_scalar, ParseScalarError, Scalar};

/// Arbitrary-precision rational, the default scalar.
pub type Rational = num_rational::BigRational;

pub type Body = geom::ConvexBody<Rational>;
pub type Rep = valuation::Representation<Rational>;
