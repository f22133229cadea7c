//! Scalar abstraction for weights, scores and expansion constants.
//!
//! The crate's primary instantiation is [`crate::Ratio`] (arbitrary-precision
//! rationals), which keeps every invariant exact. `f64` is available for
//! quick approximate work, but anything that depends on exact tie detection
//! (optimal-partition enumeration, split verdicts) is only meaningful on an
//! exact scalar.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    fn from_int(v: i64) -> Self;

    /// `num/den` with `den > 0`.
    fn ratio(num: i64, den: i64) -> Self;

    /// Parses `-?digits` or `-?digits/digits`; the float impl also accepts
    /// plain decimals.
    fn parse_weight(text: &str) -> Option<Self>;

    fn to_f64(&self) -> f64;

    fn floor(&self) -> Self;

    /// `floor` as a machine integer, when non-negative and small enough.
    fn floor_u64(&self) -> Option<u64>;

    fn is_positive_value(&self) -> bool {
        *self > Self::zero()
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    fn double(&self) -> Self {
        self.clone() + self.clone()
    }

    fn half(&self) -> Self {
        self.clone() / Self::from_int(2)
    }

    fn min_ref<'a>(a: &'a Self, b: &'a Self) -> &'a Self {
        if a <= b {
            a
        } else {
            b
        }
    }

    fn max_ref<'a>(a: &'a Self, b: &'a Self) -> &'a Self {
        if a >= b {
            a
        } else {
            b
        }
    }
}

/// Splits a weight token into numerator/denominator strings, validating the
/// strict `-?digits(/digits)?` grammar with a nonzero denominator.
fn split_ratio_tokens(text: &str) -> Option<(&str, &str)> {
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let digits = num.strip_prefix('-').unwrap_or(num);
    let num_ok = !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit());
    let den_ok = !den.is_empty()
        && den.bytes().all(|b| b.is_ascii_digit())
        && den.bytes().any(|b| b != b'0');
    if num_ok && den_ok {
        Some((num, den))
    } else {
        None
    }
}

impl Scalar for num_rational::BigRational {
    fn from_int(v: i64) -> Self {
        Self::from_integer(BigInt::from(v))
    }

    fn ratio(num: i64, den: i64) -> Self {
        assert!(den > 0, "denominator must be positive");
        Self::new(BigInt::from(num), BigInt::from(den))
    }

    fn parse_weight(text: &str) -> Option<Self> {
        let (num, den) = split_ratio_tokens(text)?;
        let num: BigInt = num.parse().ok()?;
        let den: BigInt = den.parse().ok()?;
        Some(Self::new(num, den))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn floor(&self) -> Self {
        num_rational::BigRational::floor(self)
    }

    fn floor_u64(&self) -> Option<u64> {
        num_rational::BigRational::floor(self).to_integer().to_u64()
    }
}

impl Scalar for f64 {
    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn ratio(num: i64, den: i64) -> Self {
        assert!(den > 0, "denominator must be positive");
        num as f64 / den as f64
    }

    fn parse_weight(text: &str) -> Option<Self> {
        if let Some((num, den)) = split_ratio_tokens(text) {
            let num: f64 = num.parse().ok()?;
            let den: f64 = den.parse().ok()?;
            Some(num / den)
        } else {
            text.parse().ok().filter(|v: &f64| v.is_finite())
        }
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn floor(&self) -> Self {
        f64::floor(*self)
    }

    fn floor_u64(&self) -> Option<u64> {
        let f = f64::floor(*self);
        if (0.0..=u64::MAX as f64).contains(&f) {
            Some(f as u64)
        } else {
            None
        }
    }
}
