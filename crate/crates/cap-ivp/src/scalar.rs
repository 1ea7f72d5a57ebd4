//! The numeric field abstraction.
//!
//! Every formula in the model crates is written once over [`Scalar`] and
//! instantiated with `f64` in search mode and [`Interval`] in certification
//! mode, which rules out transcription drift between the two.  Dual numbers
//! layer on top for derivatives.

use crate::{Interval, IvpError};
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub trait Scalar:
    Copy
    + Clone
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_f64(x: f64) -> Self;

    /// Lift an interval-valued parameter: interval instantiations keep the
    /// enclosure, floating instantiations take the midpoint.
    fn from_interval(v: Interval) -> Self;

    /// Midpoint/representative value, for diagnostics and seeding.
    fn approx(&self) -> f64;

    /// Square root; errors on (partially) negative arguments in interval
    /// instantiations.  The `f64` instantiation mirrors IEEE and returns NaN
    /// for negative arguments, which callers detect as non-finiteness.
    fn sqrt_checked(self) -> Result<Self, IvpError>;

    /// Division with a domain check in interval instantiations.
    fn div_checked(self, rhs: Self) -> Result<Self, IvpError>;

    fn sin(self) -> Self;
    fn cos(self) -> Self;

    /// Integer power, `n >= 0`.
    fn powi(self, n: i32) -> Self;

    /// Whether the value (or its enclosure) contains zero.
    fn contains_zero(&self) -> bool;

    /// Whether the value is exactly the degenerate zero.
    fn is_thin_zero(&self) -> bool;
}

impl Scalar for f64 {
    #[inline]
    fn zero() -> Self {
        0.0
    }
    #[inline]
    fn one() -> Self {
        1.0
    }
    #[inline]
    fn from_f64(x: f64) -> Self {
        x
    }
    #[inline]
    fn from_interval(v: Interval) -> Self {
        v.mid()
    }
    #[inline]
    fn approx(&self) -> f64 {
        *self
    }
    #[inline]
    fn sqrt_checked(self) -> Result<Self, IvpError> {
        Ok(self.sqrt())
    }
    #[inline]
    fn div_checked(self, rhs: Self) -> Result<Self, IvpError> {
        if rhs == 0.0 {
            return Err(IvpError::DivisionByZeroInterval);
        }
        Ok(self / rhs)
    }
    #[inline]
    fn sin(self) -> Self {
        f64::sin(self)
    }
    #[inline]
    fn cos(self) -> Self {
        f64::cos(self)
    }
    #[inline]
    fn powi(self, n: i32) -> Self {
        f64::powi(self, n)
    }
    #[inline]
    fn contains_zero(&self) -> bool {
        *self == 0.0
    }
    #[inline]
    fn is_thin_zero(&self) -> bool {
        *self == 0.0
    }
}

impl Scalar for Interval {
    #[inline]
    fn zero() -> Self {
        Interval::ZERO
    }
    #[inline]
    fn one() -> Self {
        Interval::ONE
    }
    #[inline]
    fn from_f64(x: f64) -> Self {
        Interval::point(x)
    }
    #[inline]
    fn from_interval(v: Interval) -> Self {
        v
    }
    #[inline]
    fn approx(&self) -> f64 {
        self.mid()
    }
    #[inline]
    fn sqrt_checked(self) -> Result<Self, IvpError> {
        self.checked_sqrt()
    }
    #[inline]
    fn div_checked(self, rhs: Self) -> Result<Self, IvpError> {
        self.checked_div(&rhs)
    }
    #[inline]
    fn sin(self) -> Self {
        Interval::sin(&self)
    }
    #[inline]
    fn cos(self) -> Self {
        Interval::cos(&self)
    }
    #[inline]
    fn powi(self, n: i32) -> Self {
        debug_assert!(n >= 0);
        Interval::powi(&self, n).expect("nonnegative integer power")
    }
    #[inline]
    fn contains_zero(&self) -> bool {
        self.contains(0.0)
    }
    #[inline]
    fn is_thin_zero(&self) -> bool {
        self.lo() == 0.0 && self.hi() == 0.0
    }
}
