//! First-order jets (dual numbers) with `K` derivative slots over any
//! [`Scalar`], used for jet transport of variational and parametric
//! derivatives through the vector fields and chart maps.

use crate::{IvpError, Scalar};
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug)]
pub struct Dual<const K: usize, B> {
    pub v: B,
    pub d: [B; K],
}

impl<const K: usize, B: Scalar> Dual<K, B> {
    pub fn constant(v: B) -> Self {
        Dual { v, d: [B::zero(); K] }
    }

    /// Value with a unit derivative in slot `slot`.
    pub fn variable(v: B, slot: usize) -> Self {
        let mut d = [B::zero(); K];
        d[slot] = B::one();
        Dual { v, d }
    }
}

impl<const K: usize, B: Scalar> Add for Dual<K, B> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        let mut d = self.d;
        for i in 0..K {
            d[i] = d[i] + rhs.d[i];
        }
        Dual { v: self.v + rhs.v, d }
    }
}

impl<const K: usize, B: Scalar> Sub for Dual<K, B> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        let mut d = self.d;
        for i in 0..K {
            d[i] = d[i] - rhs.d[i];
        }
        Dual { v: self.v - rhs.v, d }
    }
}

impl<const K: usize, B: Scalar> Mul for Dual<K, B> {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        let mut d = [B::zero(); K];
        for i in 0..K {
            d[i] = self.d[i] * rhs.v + self.v * rhs.d[i];
        }
        Dual { v: self.v * rhs.v, d }
    }
}

impl<const K: usize, B: Scalar> Div for Dual<K, B> {
    type Output = Self;
    #[inline]
    fn div(self, rhs: Self) -> Self {
        let v = self.v / rhs.v;
        let mut d = [B::zero(); K];
        for i in 0..K {
            d[i] = (self.d[i] - v * rhs.d[i]) / rhs.v;
        }
        Dual { v, d }
    }
}

impl<const K: usize, B: Scalar> Neg for Dual<K, B> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        let mut d = self.d;
        for i in 0..K {
            d[i] = -d[i];
        }
        Dual { v: -self.v, d }
    }
}

impl<const K: usize, B: Scalar> Scalar for Dual<K, B> {
    fn zero() -> Self {
        Dual::constant(B::zero())
    }
    fn one() -> Self {
        Dual::constant(B::one())
    }
    fn from_f64(x: f64) -> Self {
        Dual::constant(B::from_f64(x))
    }
    fn from_interval(v: crate::Interval) -> Self {
        Dual::constant(B::from_interval(v))
    }
    fn approx(&self) -> f64 {
        self.v.approx()
    }

    fn sqrt_checked(self) -> Result<Self, IvpError> {
        let s = self.v.sqrt_checked()?;
        let two_s = s + s;
        let mut d = [B::zero(); K];
        for i in 0..K {
            d[i] = self.d[i].div_checked(two_s)?;
        }
        Ok(Dual { v: s, d })
    }

    fn div_checked(self, rhs: Self) -> Result<Self, IvpError> {
        let v = self.v.div_checked(rhs.v)?;
        let mut d = [B::zero(); K];
        for i in 0..K {
            d[i] = (self.d[i] - v * rhs.d[i]).div_checked(rhs.v)?;
        }
        Ok(Dual { v, d })
    }

    fn sin(self) -> Self {
        let s = self.v.sin();
        let c = self.v.cos();
        let mut d = [B::zero(); K];
        for i in 0..K {
            d[i] = self.d[i] * c;
        }
        Dual { v: s, d }
    }

    fn cos(self) -> Self {
        let s = self.v.sin();
        let c = self.v.cos();
        let mut d = [B::zero(); K];
        for i in 0..K {
            d[i] = -(self.d[i] * s);
        }
        Dual { v: c, d }
    }

    fn contains_zero(&self) -> bool {
        self.v.contains_zero()
    }

    fn is_thin_zero(&self) -> bool {
        self.v.is_thin_zero()
    }

    fn powi(self, n: i32) -> Self {
        debug_assert!(n >= 0);
        match n {
            0 => Self::one(),
            _ => {
                let vp = self.v.powi(n - 1);
                let v = vp * self.v;
                let factor = B::from_f64(n as f64) * vp;
                let mut d = [B::zero(); K];
                for i in 0..K {
                    d[i] = factor * self.d[i];
                }
                Dual { v, d }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_of_product_and_quotient() {
        // f(x) = x^2 / (1 + x) at x = 2: f = 4/3, f' = (2x(1+x) - x^2)/(1+x)^2 = 8/9
        let x: Dual<1, f64> = Dual::variable(2.0, 0);
        let f = (x * x) / (Dual::one() + x);
        assert!((f.v - 4.0 / 3.0).abs() < 1e-15);
        assert!((f.d[0] - 8.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn derivative_of_sqrt_sin() {
        // f(x) = sqrt(sin(x)) at x=1: f' = cos(1)/(2 sqrt(sin 1))
        let x: Dual<1, f64> = Dual::variable(1.0, 0);
        let f = x.sin().sqrt_checked().unwrap();
        let expect = 1.0f64.cos() / (2.0 * 1.0f64.sin().sqrt());
        assert!((f.d[0] - expect).abs() < 1e-14);
    }

    #[test]
    fn interval_dual_contains_float_dual() {
        use crate::Interval;
        let xf: Dual<1, f64> = Dual::variable(0.7, 0);
        let xi: Dual<1, Interval> = Dual::variable(Interval::point(0.7), 0);
        let ff = (xf * xf * xf.sin()).powi(2);
        let fi = (xi * xi * xi.sin()).powi(2);
        assert!(fi.v.contains(ff.v));
        assert!(fi.d[0].contains(ff.d[0]));
    }
}
