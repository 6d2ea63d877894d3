//! Exact integer and half-integer primitives.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `n choose k` for `n >= 0`, `k >= 0`, with `binom(n, k) = 0` when `n < k`.
pub fn binom<T: Scalar>(n: &T, k: &T) -> Result<T> {
    if n.is_negative() {
        return Err(Error::NegativeBinomialTop { n: n.to_string() });
    }
    if k.is_negative() {
        return Err(Error::NegativeBinomialBottom { k: k.to_string() });
    }
    if n < k {
        return Ok(T::zero());
    }
    let k = std::cmp::min(k.clone(), n.clone() - k.clone());
    let mut acc = T::one();
    let mut i = T::one();
    // acc = binom(n-k+i-1, i-1) before each step; the division is exact.
    while i <= k {
        acc = acc * (n.clone() - k.clone() + i.clone()) / i.clone();
        i = i + T::one();
    }
    Ok(acc)
}

/// `binom(n, 2)`, the only binomial the bound formulas use on the hot path.
pub fn binom2<T: Scalar>(n: &T) -> Result<T> {
    binom(n, &T::two())
}

/// Floor division, rounding toward negative infinity.
pub fn floor_div<T: Scalar>(a: &T, b: &T) -> Result<T> {
    if !b.is_positive() {
        return Err(Error::NonPositiveDivisor { b: b.to_string() });
    }
    Ok(a.div_floor(b))
}

/// Splits `d - 1 = m*s + eps` with `0 <= eps <= s-1`.
pub fn div_offset<T: Scalar>(d: &T, s: &T) -> Result<(T, T)> {
    if d < &T::one() || s < &T::one() {
        return Err(Error::DivisionDomain {
            d: d.to_string(),
            s: s.to_string(),
        });
    }
    Ok((d.clone() - T::one()).div_mod_floor(s))
}

/// `max(0, x)`.
pub(crate) fn pos<T: Scalar>(x: T) -> T {
    if x.is_negative() {
        T::zero()
    } else {
        x
    }
}

/// A number `n/2`, stored as `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt<T> {
    twice: T,
}

impl<T: Scalar> HalfInt<T> {
    pub fn from_twice(twice: T) -> Self {
        HalfInt { twice }
    }

    pub fn from_int(v: T) -> Self {
        HalfInt {
            twice: v * T::two(),
        }
    }

    /// `v / 2`.
    pub fn half(v: T) -> Self {
        HalfInt { twice: v }
    }

    pub fn twice_value(&self) -> &T {
        &self.twice
    }

    pub fn is_integral(&self) -> bool {
        self.twice.is_even()
    }

    /// The represented value, if it is an integer.
    pub fn to_int(&self) -> Option<T> {
        if self.is_integral() {
            Some(self.twice.clone() / T::two())
        } else {
            None
        }
    }

    pub fn scale(&self, k: &T) -> Self {
        HalfInt {
            twice: self.twice.clone() * k.clone(),
        }
    }
}

impl<T: Scalar> Zero for HalfInt<T> {
    fn zero() -> Self {
        HalfInt { twice: T::zero() }
    }

    fn is_zero(&self) -> bool {
        self.twice.is_zero()
    }
}

impl<T: Scalar> Add for HalfInt<T> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        HalfInt {
            twice: self.twice + rhs.twice,
        }
    }
}

impl<T: Scalar> Sub for HalfInt<T> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        HalfInt {
            twice: self.twice - rhs.twice,
        }
    }
}

impl<T: Scalar> Neg for HalfInt<T> {
    type Output = Self;

    fn neg(self) -> Self {
        HalfInt { twice: -self.twice }
    }
}

/// Product of two half-integers is a quarter-integer in general, so only
/// scaling by an integer is offered.
impl<T: Scalar> Mul<T> for HalfInt<T> {
    type Output = Self;

    fn mul(self, rhs: T) -> Self {
        HalfInt {
            twice: self.twice * rhs,
        }
    }
}

impl<T: Scalar> From<T> for HalfInt<T> {
    fn from(v: T) -> Self {
        HalfInt::from_int(v)
    }
}

impl<T: Scalar> fmt::Display for HalfInt<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_int() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "{}/2", self.twice),
        }
    }
}
