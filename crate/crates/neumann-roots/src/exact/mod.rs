//! Exact rational arithmetic: scalars, matrices, univariate polynomials,
//! Gaussian elimination and Sturm-chain root counting.
//!
//! Everything in this module is exact. There is no floating point anywhere;
//! rationals are kept in lowest terms with a positive denominator after every
//! operation, so results are canonical and comparable with `==`.

mod matrix;
mod poly;
mod sturm;

pub use matrix::{gauss_solve, RationalMatrix, SingularReport};
pub use poly::UnivariatePolynomial;
pub use sturm::{squarefree_part, sturm_count, RealBound, SturmChain, SturmError};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always reduced, denominator > 0, zero is 0/1.
/// `num_rational::BigRational` maintains exactly these invariants.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for n/d.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Sign of a rational as -1, 0 or 1.
pub fn rational_sign(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal {0:?}: expected \"p\" or \"p/q\" with optional leading minus on p")]
    Malformed(String),
    #[error("zero denominator in rational literal {0:?}")]
    ZeroDenominator(String),
}

/// Parses the text form "p" or "p/q". Only p may carry a leading minus and
/// q must be a plain positive integer, so "1/-2" and "+1/2" are rejected.
pub fn parse_rational(s: &str) -> Result<Rational, RationalParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(RationalParseError::Empty);
    }
    let malformed = || RationalParseError::Malformed(s.to_string());
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = num_str.strip_prefix('-').unwrap_or(num_str);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(malformed());
    }
    let numer: BigInt = num_str.parse().map_err(|_| malformed())?;
    let denom: BigInt = match den_str {
        None => BigInt::one(),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(malformed());
            }
            let d: BigInt = d.parse().map_err(|_| malformed())?;
            if d.is_zero() {
                return Err(RationalParseError::ZeroDenominator(s.to_string()));
            }
            d
        }
    };
    Ok(Rational::new(numer, denom))
}

/// Renders in the same "p" / "p/q" form accepted by [`parse_rational`].
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses a comma-separated list of rational tokens.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>, RationalParseError> {
    s.split(',').map(parse_rational).collect()
}
