//! Closed real intervals `[lo, hi]` with outward-rounded arithmetic.

use crate::round::*;
use crate::IvpError;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// An outward-rounded enclosure of a set of reals.
///
/// Invariants: `lo <= hi` and neither endpoint is NaN.  Infinite endpoints
/// are permitted (they arise from overflow) and every operation stays sound
/// in their presence.
#[derive(Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Interval {
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };

    /// Tight enclosure of pi (f64::consts::PI rounds below the true value).
    pub const PI: Interval = Interval {
        lo: std::f64::consts::PI,
        hi: 3.141_592_653_589_793_7,
    };

    pub fn new(lo: f64, hi: f64) -> Result<Self, IvpError> {
        if lo.is_nan() || hi.is_nan() {
            return Err(IvpError::NanEndpoint);
        }
        if lo > hi {
            return Err(IvpError::ReversedEndpoints { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    /// Degenerate (thin) interval; panics on NaN.
    pub fn point(x: f64) -> Self {
        assert!(!x.is_nan(), "NaN endpoint");
        Interval { lo: x, hi: x }
    }

    /// `[lo, hi]` without checking; asserts the invariant in debug builds.
    #[inline]
    pub(crate) fn raw(lo: f64, hi: f64) -> Self {
        debug_assert!(!(lo > hi) && !lo.is_nan() && !hi.is_nan());
        Interval { lo, hi }
    }

    /// Interval spanned by two values in either order.
    pub fn between(a: f64, b: f64) -> Self {
        assert!(!a.is_nan() && !b.is_nan());
        Interval { lo: a.min(b), hi: a.max(b) }
    }

    /// Symmetric interval `[-r, r]`.
    pub fn symmetric(r: f64) -> Self {
        assert!(r >= 0.0 && !r.is_nan());
        Interval { lo: -r, hi: r }
    }

    /// Tight enclosure of the rational `num/den`.
    pub fn ratio(num: f64, den: f64) -> Self {
        Interval { lo: div_down(num, den), hi: div_up(num, den) }
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn mid(&self) -> f64 {
        let m = 0.5 * (self.lo + self.hi);
        if m.is_finite() {
            m
        } else {
            0.5 * self.lo + 0.5 * self.hi
        }
    }

    /// Upper bound on the radius about `mid()`.
    pub fn rad(&self) -> f64 {
        let m = self.mid();
        sub_up(self.hi, m).max(sub_up(m, self.lo)).max(0.0)
    }

    pub fn width(&self) -> f64 {
        sub_up(self.hi, self.lo)
    }

    /// Magnitude: `max |x|` over the interval.
    #[inline]
    pub fn mag(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    /// Mignitude: `min |x|` over the interval.
    #[inline]
    pub fn mig(&self) -> f64 {
        if self.lo <= 0.0 && self.hi >= 0.0 {
            0.0
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    #[inline]
    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    #[inline]
    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval::raw(self.lo.min(other.lo), self.hi.max(other.hi))
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        if lo <= hi {
            Some(Interval::raw(lo, hi))
        } else {
            None
        }
    }

    /// Widen by `r` on both sides.
    pub fn inflate(&self, r: f64) -> Interval {
        assert!(r >= 0.0);
        Interval::raw(sub_down(self.lo, r), add_up(self.hi, r))
    }

    /// Absolute value image.
    pub fn abs(&self) -> Interval {
        Interval::raw(self.mig(), self.mag())
    }

    pub fn recip(&self) -> Result<Interval, IvpError> {
        if self.contains(0.0) {
            return Err(IvpError::DivisionByZeroInterval);
        }
        Ok(Interval::raw(div_down(1.0, self.hi), div_up(1.0, self.lo)))
    }

    pub fn checked_div(&self, rhs: &Interval) -> Result<Interval, IvpError> {
        if rhs.contains(0.0) {
            return Err(IvpError::DivisionByZeroInterval);
        }
        let c = [
            (div_down(self.lo, rhs.lo), div_up(self.lo, rhs.lo)),
            (div_down(self.lo, rhs.hi), div_up(self.lo, rhs.hi)),
            (div_down(self.hi, rhs.lo), div_up(self.hi, rhs.lo)),
            (div_down(self.hi, rhs.hi), div_up(self.hi, rhs.hi)),
        ];
        let lo = c.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
        let hi = c.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
        Ok(Interval::raw(lo, hi))
    }

    /// Square root.  Errors when any part of the interval is negative
    /// (no silent truncation).
    pub fn checked_sqrt(&self) -> Result<Interval, IvpError> {
        if self.lo < 0.0 {
            return Err(IvpError::SqrtDomain { lo: self.lo, hi: self.hi });
        }
        Ok(Interval::raw(sqrt_down(self.lo), sqrt_up(self.hi)))
    }

    /// Integer power with the usual even-power tightening at zero.
    pub fn powi(&self, n: i32) -> Result<Interval, IvpError> {
        fn pow_down_pos(x: f64, n: i32) -> f64 {
            debug_assert!(x >= 0.0);
            let mut r = x;
            for _ in 1..n {
                r = mul_down(r, x);
            }
            r
        }
        fn pow_up_pos(x: f64, n: i32) -> f64 {
            debug_assert!(x >= 0.0);
            let mut r = x;
            for _ in 1..n {
                r = mul_up(r, x);
            }
            r
        }
        // signed endpoint power, rounded toward the requested direction
        fn pow_down(x: f64, n: i32) -> f64 {
            if x >= 0.0 {
                pow_down_pos(x, n)
            } else {
                -pow_up_pos(-x, n)
            }
        }
        fn pow_up(x: f64, n: i32) -> f64 {
            if x >= 0.0 {
                pow_up_pos(x, n)
            } else {
                -pow_down_pos(-x, n)
            }
        }

        if n < 0 {
            return self.powi(-n)?.recip();
        }
        match n {
            0 => Ok(Interval::ONE),
            1 => Ok(*self),
            _ if n % 2 == 0 => {
                let m = self.abs();
                Ok(Interval::raw(pow_down_pos(m.lo, n), pow_up_pos(m.hi, n)))
            }
            _ => Ok(Interval::raw(pow_down(self.lo, n), pow_up(self.hi, n))),
        }
    }

    /// `self * 2^k` (exact except at the extremes of the exponent range).
    pub fn scale2(&self, k: i32) -> Interval {
        let f = (2.0f64).powi(k);
        Interval::raw(mul_down(self.lo, f), mul_up(self.hi, f))
    }

    pub fn sin(&self) -> Interval {
        sin_impl(*self)
    }

    pub fn cos(&self) -> Interval {
        // cos(x) = sin(x + pi/2), but direct reduction keeps tightness
        cos_impl(*self)
    }
}

impl Neg for Interval {
    type Output = Interval;
    #[inline]
    fn neg(self) -> Interval {
        Interval::raw(-self.hi, -self.lo)
    }
}

impl Add for Interval {
    type Output = Interval;
    #[inline]
    fn add(self, rhs: Interval) -> Interval {
        Interval::raw(add_down(self.lo, rhs.lo), add_up(self.hi, rhs.hi))
    }
}

impl Sub for Interval {
    type Output = Interval;
    #[inline]
    fn sub(self, rhs: Interval) -> Interval {
        Interval::raw(sub_down(self.lo, rhs.hi), sub_up(self.hi, rhs.lo))
    }
}

impl Mul for Interval {
    type Output = Interval;
    #[inline]
    fn mul(self, rhs: Interval) -> Interval {
        let (a, b, c, d) = (self.lo, self.hi, rhs.lo, rhs.hi);
        let lo = mul_down(a, c)
            .min(mul_down(a, d))
            .min(mul_down(b, c))
            .min(mul_down(b, d));
        let hi = mul_up(a, c)
            .max(mul_up(a, d))
            .max(mul_up(b, c))
            .max(mul_up(b, d));
        Interval::raw(lo, hi)
    }
}

/// Panicking division, for contexts where the divisor is known sign-definite.
impl Div for Interval {
    type Output = Interval;
    #[inline]
    fn div(self, rhs: Interval) -> Interval {
        self.checked_div(&rhs).expect("interval division by zero")
    }
}

// ---- trigonometric enclosures -------------------------------------------

// pi/2 = PIO2_A + PIO2_B + delta with |delta| <= PIO2_TAIL.
// PIO2_A carries 32 significant bits, so k * PIO2_A is exact for |k| < 2^20.
const PIO2_A: f64 = 1.570_796_326_734_125_6;
const PIO2_B: f64 = 6.077_100_506_506_192e-11;
const PIO2_TAIL: f64 = 3.6e-27;

/// `sin` on `|y| <= pi/4 + slop`, `y` thin or narrow, via the alternating
/// series `y (1 + v)` summed smallest term first.
fn sin_reduced(y: Interval) -> Interval {
    let y2 = y * y;
    // v_j = (-1)^j y^{2j} / (2j+1)!; reciprocal factorials built
    // incrementally (19!+ are not exactly representable)
    let mut coeffs = [Interval::ZERO; 10];
    let mut c = Interval::ONE;
    for (j, slot) in coeffs.iter_mut().enumerate() {
        let j = (j + 1) as u32;
        c = c * Interval::ratio(1.0, ((2 * j) * (2 * j + 1)) as f64);
        *slot = c;
    }
    let mut v = Interval::ZERO;
    for j in (1..=9usize).rev() {
        let term = y2.powi(j as i32).unwrap() * coeffs[j - 1];
        v = if j % 2 == 1 { v - term } else { v + term };
    }
    // dropped tail: |y|^20 / 21! and beyond; alternating, first term bounds
    let rem = (y2.abs().powi(10).unwrap() * coeffs[9]).mag();
    let r = y * (Interval::ONE + v.inflate(next_up(rem)));
    r.intersect(&Interval::raw(-1.0, 1.0)).unwrap_or(Interval::raw(-1.0, 1.0))
}

fn cos_reduced(y: Interval) -> Interval {
    let y2 = y * y;
    let mut coeffs = [Interval::ZERO; 10];
    let mut c = Interval::ONE;
    for (j, slot) in coeffs.iter_mut().enumerate() {
        let j = (j + 1) as u32;
        c = c * Interval::ratio(1.0, ((2 * j - 1) * (2 * j)) as f64);
        *slot = c;
    }
    let mut w = Interval::ZERO;
    for j in (1..=9usize).rev() {
        let term = y2.powi(j as i32).unwrap() * coeffs[j - 1];
        w = if j % 2 == 1 { w - term } else { w + term };
    }
    let rem = (y2.abs().powi(10).unwrap() * coeffs[9]).mag();
    let r = Interval::ONE + w.inflate(next_up(rem));
    r.intersect(&Interval::raw(-1.0, 1.0)).unwrap_or(Interval::raw(-1.0, 1.0))
}

/// Precise quadrant reduction `x = k pi/2 + (s + t)`, `|t| <= terr`;
/// only for `|x| <= 1e5` so that `k * PIO2_A` stays exact.
fn reduce_precise(x: f64) -> Option<(i64, Interval)> {
    if x.abs() > 1e5 {
        return None;
    }
    let k = (x * std::f64::consts::FRAC_2_PI).round();
    if k == 0.0 {
        return Some((0, Interval::point(x)));
    }
    // r1 = x - k A exactly (two_sum captures any residue), then fold k B
    let (r1, e1) = {
        let s = x - k * PIO2_A;
        let b = s - x;
        let e = (x - (s - b)) + ((-k * PIO2_A) - b);
        (s, e)
    };
    let (s2, e2) = {
        let m = k * PIO2_B;
        let s = r1 - m;
        let b = s - r1;
        let e = (r1 - (s - b)) + ((-m) - b);
        (s, e)
    };
    // total tail: exact two_sum residues + k*(pi/2 tail) + k*B product error
    let kb_err = (k * PIO2_B).abs() * f64::EPSILON;
    let terr = add_up(
        add_up(e1.abs(), e2.abs()),
        add_up(mul_up(k.abs(), PIO2_TAIL), kb_err),
    );
    Some((k as i64, Interval::point(s2).inflate(terr)))
}

/// Coarse reduction for large arguments; wider but still rigorous.
fn reduce_coarse(x: f64) -> Option<(i64, Interval)> {
    if x.abs() > 1e12 {
        return None;
    }
    let k = (x / std::f64::consts::FRAC_PI_2).round();
    let half_pi = Interval::PI.scale2(-1);
    let y = Interval::point(x) - Interval::point(k) * half_pi;
    Some((k as i64, y))
}

fn reduce(x: f64) -> Option<(i64, Interval)> {
    reduce_precise(x).or_else(|| reduce_coarse(x))
}

fn sin_point(x: f64) -> Interval {
    match reduce(x) {
        None => Interval::raw(-1.0, 1.0),
        Some((k, y)) => match k.rem_euclid(4) {
            0 => sin_reduced(y),
            1 => cos_reduced(y),
            2 => -sin_reduced(y),
            _ => -cos_reduced(y),
        },
    }
}

fn cos_point(x: f64) -> Interval {
    match reduce(x) {
        None => Interval::raw(-1.0, 1.0),
        Some((k, y)) => match k.rem_euclid(4) {
            0 => cos_reduced(y),
            1 => -sin_reduced(y),
            2 => -cos_reduced(y),
            _ => sin_reduced(y),
        },
    }
}

/// Does `[lo, hi]` contain a point congruent to `c` mod 2*pi?
/// Conservative: answers true whenever it cannot be excluded.
fn contains_congruent(lo: f64, hi: f64, c: f64) -> bool {
    if !(lo.is_finite() && hi.is_finite()) || hi - lo >= 2.0 * std::f64::consts::PI {
        return true;
    }
    let two_pi = Interval::PI.scale2(1);
    // smallest k with c + 2 pi k >= lo - slack
    let k = ((lo - c) / (2.0 * std::f64::consts::PI)).floor();
    for kk in [k - 1.0, k, k + 1.0, k + 2.0] {
        let cand = Interval::point(c) + Interval::point(kk) * two_pi;
        if cand.hi() >= lo && cand.lo() <= hi {
            return true;
        }
    }
    false
}

fn sin_impl(x: Interval) -> Interval {
    if x.lo == x.hi {
        return sin_point(x.lo);
    }
    if !x.is_finite() || x.width() >= 2.0 * std::f64::consts::PI {
        return Interval::raw(-1.0, 1.0);
    }
    let mut out = sin_point(x.lo).hull(&sin_point(x.hi));
    if contains_congruent(x.lo, x.hi, std::f64::consts::FRAC_PI_2) {
        out = out.hull(&Interval::point(1.0));
    }
    if contains_congruent(x.lo, x.hi, -std::f64::consts::FRAC_PI_2) {
        out = out.hull(&Interval::point(-1.0));
    }
    out.intersect(&Interval::raw(-1.0, 1.0)).unwrap_or(Interval::raw(-1.0, 1.0))
}

fn cos_impl(x: Interval) -> Interval {
    if x.lo == x.hi {
        return cos_point(x.lo);
    }
    if !x.is_finite() || x.width() >= 2.0 * std::f64::consts::PI {
        return Interval::raw(-1.0, 1.0);
    }
    let mut out = cos_point(x.lo).hull(&cos_point(x.hi));
    if contains_congruent(x.lo, x.hi, 0.0) {
        out = out.hull(&Interval::point(1.0));
    }
    if contains_congruent(x.lo, x.hi, std::f64::consts::PI) {
        out = out.hull(&Interval::point(-1.0));
    }
    out.intersect(&Interval::raw(-1.0, 1.0)).unwrap_or(Interval::raw(-1.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_arithmetic_is_exact() {
        let a = Interval::new(1.0, 2.0).unwrap();
        let b = Interval::new(3.0, 4.0).unwrap();
        assert_eq!(a + b, Interval::raw(4.0, 6.0));

        let c = Interval::new(-1.0, 2.0).unwrap();
        assert_eq!(c * b, Interval::raw(-4.0, 8.0));

        let s = Interval::new(4.0, 9.0).unwrap().checked_sqrt().unwrap();
        assert_eq!(s, Interval::raw(2.0, 3.0));
    }

    #[test]
    fn nan_and_reversed_rejected() {
        assert!(Interval::new(f64::NAN, 1.0).is_err());
        assert!(Interval::new(1.0, f64::NAN).is_err());
        assert!(Interval::new(2.0, 1.0).is_err());
    }

    #[test]
    fn division_by_zero_interval() {
        let a = Interval::new(1.0, 2.0).unwrap();
        let b = Interval::new(-1.0, 1.0).unwrap();
        assert!(a.checked_div(&b).is_err());
    }

    #[test]
    fn sqrt_straddle_errors() {
        let a = Interval::new(-1.0, 4.0).unwrap();
        assert!(a.checked_sqrt().is_err());
        let b = Interval::new(-4.0, -1.0).unwrap();
        assert!(b.checked_sqrt().is_err());
    }

    #[test]
    fn even_power_at_zero() {
        let a = Interval::new(-2.0, 3.0).unwrap();
        assert_eq!(a.powi(2).unwrap(), Interval::raw(0.0, 9.0));
    }

    #[test]
    fn sin_cos_point_tightness() {
        for &x in &[0.0, 0.5, 1.0, 2.0, 3.0, -4.5, 10.0, 100.0, 2.945584780500716] {
            let s = Interval::point(x).sin();
            let c = Interval::point(x).cos();
            assert!(s.contains(x.sin()), "sin({x})");
            assert!(c.contains(x.cos()), "cos({x})");
            // width <= 4 ulp of the value scale
            assert!(s.width() <= 4.0 * f64::EPSILON, "sin width at {x}: {}", s.width());
            assert!(c.width() <= 4.0 * f64::EPSILON, "cos width at {x}: {}", c.width());
        }
    }

    #[test]
    fn sin_wide_hits_extrema() {
        let x = Interval::new(0.0, 4.0).unwrap();
        let s = x.sin();
        assert!(s.contains(1.0));
        assert!(s.lo() <= (4.0f64).sin());
        let c = Interval::new(2.0, 5.0).unwrap().cos();
        assert!(c.contains(-1.0));
    }

    #[test]
    fn pi_enclosure() {
        // sin(pi enclosure) must contain 0
        assert!(Interval::PI.sin().contains(0.0));
        assert!(Interval::PI.width() <= 2.0 * f64::EPSILON * 4.0);
    }
}
