//! Directed rounding for the four basic operations and square root.
//!
//! Rather than switching the hardware rounding mode (which the optimizer is
//! free to ignore), every operation is computed in round-to-nearest and the
//! exact sign of the rounding error is recovered through error-free
//! transformations (TwoSum, and FMA residuals for products, quotients and
//! roots).  The correctly rounded directed result is then either the nearest
//! result itself or its float neighbour.  This is exact directed rounding:
//! operations on exactly representable data ([1,2]+[3,4], sqrt([4,9]), ...)
//! do not widen at all.  The scheme is global, deterministic and thread safe.
//!
//! Near the underflow threshold the FMA residual can lose its sign, so below
//! `TINY` the result is widened by one ulp unconditionally.

/// Magnitudes below this fall back to unconditional one-ulp widening.
const TINY: f64 = 1e-280;

#[inline]
pub fn next_up(x: f64) -> f64 {
    if x.is_nan() || x == f64::INFINITY {
        return x;
    }
    let bits = x.to_bits();
    let next = if x == 0.0 {
        1 // smallest positive subnormal
    } else if bits >> 63 == 0 {
        bits + 1
    } else {
        bits - 1
    };
    f64::from_bits(next)
}

#[inline]
pub fn next_down(x: f64) -> f64 {
    -next_up(-x)
}

/// TwoSum of Knuth: `a + b = s + e` exactly, `s = fl(a + b)`.
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

#[inline]
pub fn add_down(a: f64, b: f64) -> f64 {
    let (s, e) = two_sum(a, b);
    if s.is_nan() {
        // inf - inf: any real is enclosed only by the unbounded choice
        return f64::NEG_INFINITY;
    }
    if e < 0.0 {
        next_down(s)
    } else {
        s
    }
}

#[inline]
pub fn add_up(a: f64, b: f64) -> f64 {
    let (s, e) = two_sum(a, b);
    if s.is_nan() {
        return f64::INFINITY;
    }
    if e > 0.0 {
        next_up(s)
    } else {
        s
    }
}

#[inline]
pub fn sub_down(a: f64, b: f64) -> f64 {
    add_down(a, -b)
}

#[inline]
pub fn sub_up(a: f64, b: f64) -> f64 {
    add_up(a, -b)
}

/// Error of the rounded product: `a*b = p + e` exactly (no underflow).
#[inline]
fn prod_err(a: f64, b: f64, p: f64) -> f64 {
    a.mul_add(b, -p)
}

#[inline]
pub fn mul_down(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let p = a * b;
    if p.is_nan() {
        if a.is_nan() || b.is_nan() {
            return f64::NAN;
        }
        return f64::NEG_INFINITY; // 0 * inf
    }
    if !p.is_finite() || p.abs() < TINY {
        return if p == f64::INFINITY { f64::MAX } else { next_down(p) };
    }
    let e = prod_err(a, b, p);
    if e < 0.0 {
        next_down(p)
    } else {
        p
    }
}

#[inline]
pub fn mul_up(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let p = a * b;
    if p.is_nan() {
        if a.is_nan() || b.is_nan() {
            return f64::NAN;
        }
        return f64::INFINITY;
    }
    if !p.is_finite() || p.abs() < TINY {
        return if p == f64::NEG_INFINITY { f64::MIN } else { next_up(p) };
    }
    let e = prod_err(a, b, p);
    if e > 0.0 {
        next_up(p)
    } else {
        p
    }
}

/// Sign of the exact residual `q*b - a`; `b` must be nonzero and finite.
#[inline]
fn div_resid(a: f64, b: f64, q: f64) -> f64 {
    q.mul_add(b, -a)
}

#[inline]
pub fn div_down(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    let q = a / b;
    if !q.is_finite() || q.abs() < TINY || a.abs() < TINY {
        return if q == f64::INFINITY { f64::MAX } else { next_down(q) };
    }
    let r = div_resid(a, b, q);
    // a/b = q - r/b, so a/b < q iff r and b share a sign
    if r == 0.0 {
        q
    } else if (r > 0.0) == (b > 0.0) {
        next_down(q)
    } else {
        q
    }
}

#[inline]
pub fn div_up(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    let q = a / b;
    if !q.is_finite() || q.abs() < TINY || a.abs() < TINY {
        return if q == f64::NEG_INFINITY { f64::MIN } else { next_up(q) };
    }
    let r = div_resid(a, b, q);
    if r == 0.0 {
        q
    } else if (r > 0.0) == (b > 0.0) {
        q
    } else {
        next_up(q)
    }
}

#[inline]
pub fn sqrt_down(a: f64) -> f64 {
    debug_assert!(a >= 0.0);
    let s = a.sqrt();
    if !s.is_finite() || a < TINY {
        return if a == 0.0 { 0.0 } else { next_down(s) };
    }
    let r = s.mul_add(s, -a); // sign of s^2 - a
    if r > 0.0 {
        next_down(s)
    } else {
        s
    }
}

#[inline]
pub fn sqrt_up(a: f64) -> f64 {
    debug_assert!(a >= 0.0);
    let s = a.sqrt();
    if !s.is_finite() || a < TINY {
        return if a == 0.0 { 0.0 } else { next_up(s) };
    }
    let r = s.mul_add(s, -a);
    if r < 0.0 {
        next_up(s)
    } else {
        s
    }
}
