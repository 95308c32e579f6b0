//! Exact base arithmetic: arbitrary-precision rationals, univariate
//! polynomials over ℚ, and the rational-function field ℚ(t).

mod integers;
mod ratfunc;
mod unipoly;

pub use integers::{int_cubefree_kernel, int_squarefree_kernel, rational_cube_class, rational_square_class};
pub use ratfunc::{ratfunc_arith, RatFunc, RatFuncOp};
pub use unipoly::{squarefree_part, UniPoly};

use num_bigint::BigInt;
use thiserror::Error;

/// Arbitrary-precision rational with canonical form maintained by
/// construction: reduced, positive denominator, zero as 0/1.
pub type Rational = num_rational::BigRational;

/// Shorthand for a rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integer rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by the zero rational function")]
    DivisionByZero,
    #[error("squarefree part of the zero polynomial is undefined")]
    ZeroPolynomial,
}
