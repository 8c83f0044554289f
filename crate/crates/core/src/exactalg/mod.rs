//! Exact arithmetic foundation: big integers and rationals, binomial
//! coefficients, and sparse multivariate polynomials over the rationals.
//!
//! Every quantity in this crate is exact. Coefficients are arbitrary
//! precision rationals ([`num_rational::BigRational`]), always reduced with a
//! positive denominator; counts and multiplicities are
//! [`num_bigint::BigInt`].

mod monomial;
mod polynomial;

pub use monomial::{lex_compare, ExponentVector};
pub use polynomial::Polynomial;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Exact binomial coefficient `C(a, b)`.
///
/// Returns 0 when `b < 0` or `b > a`, so sums indexed over a binomial row can
/// be written without boundary cases.
pub fn binomial(a: u64, b: i64) -> BigInt {
    if b < 0 || b as u64 > a {
        return BigInt::zero();
    }
    let b = (b as u64).min(a - b as u64);
    let mut acc = BigInt::one();
    for i in 0..b {
        acc = acc * BigInt::from(a - i) / BigInt::from(i + 1);
    }
    acc
}
