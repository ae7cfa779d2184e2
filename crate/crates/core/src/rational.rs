//! Exact rationals.
//!
//! [`Rational`] is an arbitrary-precision fraction; its `Display` prints
//! `p/q` in lowest terms, or just `p` when `q = 1`, and `FromStr` reads the
//! same forms back.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// `n / d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn half() -> Rational {
    rat(1, 2)
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

/// Converts an integral rational to `i64`; `None` if it is not integral or too large.
pub fn to_i64(x: &Rational) -> Option<i64> {
    if is_integer(x) {
        x.numer().to_i64()
    } else {
        None
    }
}

/// Smallest integer `n` with `n >= x`.
pub fn ceil_i64(x: &Rational) -> i64 {
    x.ceil().to_integer().to_i64().expect("ceil out of i64 range")
}

pub fn abs(x: &Rational) -> Rational {
    x.abs()
}

pub fn min_of<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> Option<Rational> {
    xs.into_iter().min().cloned()
}

pub fn sum<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> Rational {
    xs.into_iter().fold(Rational::zero(), |acc, x| acc + x)
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}
