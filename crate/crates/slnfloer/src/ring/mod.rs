//! Exact polynomial arithmetic over the rationals.
//!
//! [`MultiPoly`] is a sparse commutative polynomial in named indeterminates,
//! [`LaurentPoly`] carries integer exponents in the formal variables `a`,
//! `q`, `t`, and [`LinearElim`] realizes quotients by linear relations by
//! eliminating one variable per relation.

mod laurent;
mod linear;
mod monomial;
mod multipoly;
mod parse;
mod var;

pub use laurent::{LExp, LaurentPoly};
pub use linear::{eliminate_linear, LinearElim};
pub use monomial::Monomial;
pub use multipoly::{exact_div, specialize, MultiPoly};
pub use var::Var;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rational numbers.
pub type Rational = BigRational;

/// Default bound on any single exponent produced by an operation.
pub const DEFAULT_EXPONENT_LIMIT: u32 = 512;

/// The rational number `n`.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The rational number `n / d`; panics if `d == 0`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Converts an integral rational to `i64`, if it is one and fits.
pub fn to_i64(r: &Rational) -> Option<i64> {
    use num_traits::ToPrimitive;
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}
