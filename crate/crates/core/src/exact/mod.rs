//! Exact arithmetic substrate: rationals, binomials, truncated power series and
//! homogeneous bivariate polynomials. Nothing here ever rounds.

mod binomial;
mod poly;
pub mod rational_json;
mod series;

pub use binomial::{binomial, binomial_int, BinomialTable, DEFAULT_BINOMIAL_CAP};
pub use poly::HomogeneousPoly;
pub use series::PowerSeries;

use num_bigint::BigInt;
use num_traits::One;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `base^exp` for a possibly negative exponent.
pub fn pow_rational(base: &Rational, exp: i64) -> Rational {
    if exp >= 0 {
        num_traits::pow(base.clone(), exp as usize)
    } else {
        Rational::one() / num_traits::pow(base.clone(), (-exp) as usize)
    }
}

/// `q^e` as an exact rational; negative exponents give reciprocals.
pub fn qpow(q: u32, exp: i64) -> Rational {
    pow_rational(&Rational::from_integer(BigInt::from(q)), exp)
}
