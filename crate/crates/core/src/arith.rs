//! Exact integer and rational arithmetic shared by the counting code.
//!
//! Every count is a [`Count`] (arbitrary precision, non-negative). Closed forms
//! with fractional constants are evaluated as [`ExactRational`] and converted
//! back with [`rational_to_count`], which refuses anything that is not a
//! non-negative integer.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type ExactRational = BigRational;

/// A non-negative arbitrary-precision integer: the size of some family of graphs.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Count(BigUint);

impl Count {
    pub fn new(value: BigUint) -> Self {
        Count(value)
    }

    pub fn zero() -> Self {
        Count(BigUint::zero())
    }

    pub fn one() -> Self {
        Count(BigUint::one())
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn into_inner(self) -> BigUint {
        self.0
    }

    pub fn to_bigint(&self) -> BigInt {
        BigInt::from_biguint(Sign::Plus, self.0.clone())
    }

    pub fn to_rational(&self) -> ExactRational {
        ExactRational::from_integer(self.to_bigint())
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }
}

impl From<u64> for Count {
    fn from(v: u64) -> Self {
        Count(BigUint::from(v))
    }
}

impl From<BigUint> for Count {
    fn from(v: BigUint) -> Self {
        Count(v)
    }
}

impl PartialEq<u64> for Count {
    fn eq(&self, other: &u64) -> bool {
        self.0 == BigUint::from(*other)
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

// Counts go over the wire as decimal strings so no consumer truncates them.
impl Serialize for Count {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(&self.0)
    }
}

/// `C(a, b)`, zero when `b < 0` or `b > a`. A negative `a` is rejected.
pub fn binomial(a: i64, b: i64) -> Result<Count> {
    if a < 0 {
        return Err(Error::NegativeArgument(a));
    }
    if b < 0 || b > a {
        return Ok(Count::zero());
    }
    Ok(Count(choose(a as u64, b as u64)))
}

/// Unchecked binomial on unsigned arguments; zero when `b > a`.
pub fn choose(a: u64, b: u64) -> BigUint {
    if b > a {
        return BigUint::zero();
    }
    let k = b.min(a - b);
    let mut acc = BigUint::one();
    // acc stays integral: after step i it equals C(a - k + i, i).
    for i in 1..=k {
        acc *= a - k + i;
        acc /= i;
    }
    acc
}

pub fn factorial(k: u64) -> Count {
    Count((1..=k).fold(BigUint::one(), |acc, i| acc * i))
}

pub fn factorial_big(k: u64) -> BigUint {
    factorial(k).into_inner()
}

/// Converts an exact rational to a [`Count`], failing unless it is a
/// non-negative integer.
pub fn rational_to_count(x: &ExactRational) -> Result<Count> {
    if !x.denom().is_one() {
        return Err(Error::NonIntegerResult(x.to_string()));
    }
    if x.is_negative() {
        return Err(Error::NegativeResult(x.to_string()));
    }
    Ok(Count(x.numer().magnitude().clone()))
}

pub fn rat(numer: i64, denom: i64) -> ExactRational {
    ExactRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(v: i64) -> ExactRational {
    ExactRational::from_integer(BigInt::from(v))
}

pub fn big_rat(v: BigUint) -> ExactRational {
    ExactRational::from_integer(BigInt::from_biguint(Sign::Plus, v))
}

/// `C(a, b) / d` as an exact rational.
pub fn choose_over(a: u64, b: u64, d: &BigUint) -> ExactRational {
    ExactRational::new(
        BigInt::from_biguint(Sign::Plus, choose(a, b)),
        BigInt::from_biguint(Sign::Plus, d.clone()),
    )
}

/// `2^e` for any integer exponent; negative exponents give `1 / 2^-e`.
pub fn pow2(e: i64) -> ExactRational {
    let mag = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        ExactRational::from_integer(mag)
    } else {
        ExactRational::new(BigInt::one(), mag)
    }
}

/// `(-1)^e`.
pub fn sign_pow(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `2^e` for a non-negative exponent as an unsigned integer.
pub fn two_pow(e: u64) -> u64 {
    assert!(e < 64, "2^{e} does not fit in u64");
    1u64 << e
}

/// Formats a rational as `p/q`, or `p` when the denominator is one.
pub fn format_rational(x: &ExactRational) -> String {
    x.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(9, 3).unwrap(), 84);
        assert_eq!(binomial(5, 0).unwrap(), 1);
        assert_eq!(binomial(3, 5).unwrap(), 0);
        assert_eq!(binomial(3, -1).unwrap(), 0);
        assert_eq!(binomial(0, 0).unwrap(), 1);
        assert_eq!(binomial(-1, 0), Err(Error::NegativeArgument(-1)));
    }

    #[test]
    fn factorial_examples() {
        assert_eq!(factorial(0), 1);
        assert_eq!(factorial(5), 120);
        assert_eq!(factorial(10), 3_628_800);
    }

    #[test]
    fn pascal_and_symmetry_grid() {
        for a in 0..=64i64 {
            for b in 0..=a {
                assert_eq!(binomial(a, b).unwrap(), binomial(a, a - b).unwrap());
                if b > 0 {
                    let lhs = binomial(a, b).unwrap().into_inner();
                    let rhs = binomial(a - 1, b - 1).unwrap().into_inner()
                        + binomial(a - 1, b).unwrap().into_inner();
                    assert_eq!(lhs, rhs, "Pascal fails at ({a},{b})");
                }
            }
        }
    }

    #[test]
    fn rational_to_count_examples() {
        assert_eq!(rational_to_count(&rat(168, 24)).unwrap(), 7);
        assert_eq!(rational_to_count(&int(7)).unwrap(), 7);
        assert!(matches!(
            rational_to_count(&rat(3, 2)),
            Err(Error::NonIntegerResult(_))
        ));
        assert!(matches!(
            rational_to_count(&int(-4)),
            Err(Error::NegativeResult(_))
        ));
    }

    #[test]
    fn negative_powers_of_two_are_exact() {
        assert_eq!(pow2(-3), rat(1, 8));
        assert_eq!(pow2(0), int(1));
        assert_eq!(pow2(10), int(1024));
        assert_eq!(sign_pow(-1), -1);
        assert_eq!(sign_pow(4), 1);
    }

    #[test]
    fn counts_serialize_as_strings() {
        let big = Count::new(BigUint::one() << 100u32);
        let json = serde_json::to_string(&big).unwrap();
        assert_eq!(json, "\"1267650600228229401496703205376\"");
    }

    proptest! {
        #[test]
        fn rational_arithmetic_is_exact(
            a in -10_000i64..10_000, b in 1i64..10_000,
            c in -10_000i64..10_000, d in 1i64..10_000,
        ) {
            let x = rat(a, b);
            let y = rat(c, d);
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            if c != 0 {
                prop_assert_eq!(&(&x * &y) / &y, x);
            }
        }

        #[test]
        fn integer_rationals_round_trip(k in 0u64..u64::MAX) {
            let x = big_rat(BigUint::from(k));
            prop_assert_eq!(rational_to_count(&x).unwrap(), k);
        }
    }
}
