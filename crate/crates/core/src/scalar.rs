//! Scalar fields of the engine: exact rationals and binary floats.
//!
//! All curvature code is generic over [`Scalar`]. Exact mode uses
//! arbitrary-precision rationals where identities are checked to literal
//! zero; float mode uses `f64` and every comparison goes through an explicit
//! tolerance.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// Arithmetic mode of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    const MODE: Mode;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(q: &BigRational) -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_f64(x: f64) -> Self;
    /// Literal zero test. In float mode this is raw equality and must only be
    /// used for sparsity shortcuts, never for pass/fail decisions.
    fn is_zero(&self) -> bool;
    fn abs(&self) -> Self;
    fn to_f64(&self) -> f64;
    fn to_number(&self) -> Number;
    /// `acc += a * b`
    fn mul_add_to(acc: &mut Self, a: &Self, b: &Self);
    /// The exponential, available only where it is representable.
    fn exp(&self) -> Option<Self>;

    fn from_ratio(p: i64, q: i64) -> Self {
        Self::from_rational(&BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    fn is_exact() -> bool {
        Self::MODE == Mode::Exact
    }

    fn max_abs(&self, other: &Self) -> Self {
        let (a, b) = (self.abs(), other.abs());
        if a >= b {
            a
        } else {
            b
        }
    }
}

impl Scalar for BigRational {
    const MODE: Mode = Mode::Exact;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_f64(x: f64) -> Self {
        BigRational::from_float(x).unwrap_or_default()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn to_number(&self) -> Number {
        Number::Rational(self.clone())
    }
    fn mul_add_to(acc: &mut Self, a: &Self, b: &Self) {
        *acc += a * b;
    }
    fn exp(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            Some(One::one())
        } else {
            None
        }
    }
}

impl Scalar for f64 {
    const MODE: Mode = Mode::Float;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_rational(q: &BigRational) -> Self {
        ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn to_number(&self) -> Number {
        Number::Float(*self)
    }
    fn mul_add_to(acc: &mut Self, a: &Self, b: &Self) {
        *acc += a * b;
    }
    fn exp(&self) -> Option<Self> {
        Some(f64::exp(*self))
    }
}

/// A mode-erased number as it appears in reports.
///
/// Rationals serialize as `"p/q"` strings (zero as `"0"`); floats serialize as
/// shortest round-trip decimals.
#[derive(Debug, Clone, PartialEq)]
pub enum Number {
    Rational(BigRational),
    Float(f64),
}

impl Number {
    pub fn to_f64(&self) -> f64 {
        match self {
            Number::Rational(q) => Scalar::to_f64(q),
            Number::Float(x) => *x,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Number::Rational(q) => Zero::is_zero(q),
            Number::Float(x) => *x == 0.0,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Number::Rational(q) => Some(q),
            Number::Float(_) => None,
        }
    }

    pub fn ratio(p: i64, q: i64) -> Number {
        Number::Rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn rational_string(q: &BigRational) -> String {
        if Zero::is_zero(q) {
            "0".to_string()
        } else {
            format!("{}/{}", q.numer(), q.denom())
        }
    }
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Number::Rational(q) => f.write_str(&Number::rational_string(q)),
            Number::Float(x) => write!(f, "{x:e}"),
        }
    }
}

impl Serialize for Number {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Number::Rational(q) => serializer.serialize_str(&Number::rational_string(q)),
            Number::Float(x) => serializer.serialize_f64(*x),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_serialization() {
        assert_eq!(serde_json::to_string(&Number::ratio(0, 5)).unwrap(), "\"0\"");
        assert_eq!(serde_json::to_string(&Number::ratio(1, 1)).unwrap(), "\"1/1\"");
        assert_eq!(serde_json::to_string(&Number::ratio(-6, 4)).unwrap(), "\"-3/2\"");
        assert_eq!(serde_json::to_string(&Number::Float(0.1)).unwrap(), "0.1");
    }

    #[test]
    fn exp_only_exact_at_zero() {
        assert_eq!(<BigRational as Scalar>::zero().exp(), Some(<BigRational as One>::one()));
        assert_eq!(BigRational::from_i64(1).exp(), None);
        assert!((1.0f64.exp() - std::f64::consts::E).abs() < 1e-15);
    }
}
