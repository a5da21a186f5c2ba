//! Numeric backends: exact rationals and `f64`.

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt::{Debug, Display};
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// Ordered field used by every computation in the crate.
pub trait Scalar:
    Clone
    + PartialOrd
    + PartialEq
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const EXACT: bool;
    const NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn ratio(n: i64, d: i64) -> Self;
    /// Exact rationals go through the shortest decimal form of `v`.
    fn from_f64(v: f64) -> Option<Self>;
    /// Nearest value to an exact rational.
    fn from_rational(q: &Rational) -> Self;
    fn to_f64(&self) -> f64;
    fn exp(&self) -> Option<Self>;
    fn ln(&self) -> Option<Self>;
    /// Comparison slack for verdicts and oracle checks.
    fn tol() -> Self;
    /// Snapping distance for range membership.
    fn snap() -> Self;

    fn half() -> Self {
        Self::ratio(1, 2)
    }
    fn is_zero_s(&self) -> bool {
        *self == Self::zero()
    }
    fn abs_s(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }
    fn min_s(&self, o: &Self) -> Self {
        if o < self {
            o.clone()
        } else {
            self.clone()
        }
    }
    fn max_s(&self, o: &Self) -> Self {
        if o > self {
            o.clone()
        } else {
            self.clone()
        }
    }
    fn cmp_s(&self, o: &Self) -> Ordering {
        self.partial_cmp(o).unwrap_or(Ordering::Equal)
    }
    /// `|a - b| <= snap`.
    fn near(&self, o: &Self) -> bool {
        (self.clone() - o.clone()).abs_s() <= Self::snap()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;
    const NAME: &'static str = "float";

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn ratio(n: i64, d: i64) -> Self {
        n as f64 / d as f64
    }
    fn from_f64(v: f64) -> Option<Self> {
        v.is_finite().then_some(v)
    }
    fn from_rational(q: &Rational) -> Self {
        ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn exp(&self) -> Option<Self> {
        Some(libm::exp(*self))
    }
    fn ln(&self) -> Option<Self> {
        (*self > 0.0).then(|| libm::log(*self))
    }
    fn tol() -> Self {
        1e-9
    }
    fn snap() -> Self {
        1e-12
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;
    const NAME: &'static str = "exact";

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn ratio(n: i64, d: i64) -> Self {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }
    fn from_f64(v: f64) -> Option<Self> {
        if !v.is_finite() {
            return None;
        }
        parse_decimal(&alloc::format!("{}", v))
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn exp(&self) -> Option<Self> {
        None
    }
    fn ln(&self) -> Option<Self> {
        None
    }
    fn tol() -> Self {
        Zero::zero()
    }
    fn snap() -> Self {
        Zero::zero()
    }
    fn abs_s(&self) -> Self {
        self.abs()
    }
}

/// Parses `-12.345`, `7` or `3/8` into an exact rational.
pub fn parse_decimal(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let mut digits = String::from(int);
    digits.push_str(frac);
    let n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    let d = num_traits::pow(BigInt::from(10), frac.len());
    let r = BigRational::new(n, d);
    Some(if neg { -r } else { r })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_parsing() {
        assert_eq!(parse_decimal("0.2"), Some(Rational::ratio(1, 5)));
        assert_eq!(parse_decimal("-1.25"), Some(Rational::ratio(-5, 4)));
        assert_eq!(parse_decimal("3/9"), Some(Rational::ratio(1, 3)));
        assert_eq!(parse_decimal("x"), None);
        assert_eq!(<Rational as Scalar>::from_f64(0.3), Some(Rational::ratio(3, 10)));
    }
}
