//! Levi-Civita chart transforms T1, T2 (regularized to synodic), their
//! double-cover inverses, and the collision-circle parameterizations.

use crate::{Chart, CrtbpError, PhasePoint, SystemParams};
use cap_ivp::Scalar;

/// Sheet of the double cover picked by a chart inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    /// The branch a regularized seed point lies on (sign of its x slot,
    /// ties toward Plus).
    pub fn from_seed(x_hat: f64) -> Branch {
        if x_hat >= 0.0 {
            Branch::Plus
        } else {
            Branch::Minus
        }
    }

    fn sign<S: Scalar>(self) -> S {
        match self {
            Branch::Plus => S::one(),
            Branch::Minus => -S::one(),
        }
    }
}

const DENOM_GUARD: f64 = 1e-300;

/// T1 or T2: map a regularized point back to synodic coordinates.
///
/// Position: z = zh^2 + primary offset.  Velocity: (p,q) from
/// (p + iq) = (ph + i qh) * zh / (2 |zh|^2).
pub fn chart_map<S: Scalar>(
    pt: &PhasePoint<S>,
    params: &SystemParams,
) -> Result<PhasePoint<S>, CrtbpError> {
    let offset = match pt.chart {
        Chart::Lc1 => params.mu::<S>(),
        Chart::Lc2 => params.mu::<S>() - S::one(),
        Chart::Synodic => {
            return Err(CrtbpError::ChartMismatch { expected: Chart::Lc1, got: Chart::Synodic })
        }
    };
    let [x, p, y, q] = pt.coords;
    let r2 = x * x + y * y;
    if r2.approx().abs() < DENOM_GUARD {
        return Err(CrtbpError::CollisionPoint);
    }
    let half = S::from_f64(0.5);
    let inv = half.div_checked(r2).map_err(|_| CrtbpError::CollisionPoint)?;
    let sx = x * x - y * y + offset;
    let sp = (x * p - y * q) * inv;
    let sy = S::from_f64(2.0) * x * y;
    let sq = (y * p + x * q) * inv;
    Ok(PhasePoint::synodic([sx, sp, sy, sq]))
}

/// Inverse chart transform onto the sheet picked by `branch`.
///
/// zh = branch * sqrt(z - primary offset) (complex square root with the cut
/// on the negative real axis), and (ph + i qh) = 2 conj(zh) (p + iq).
pub fn chart_inverse<S: Scalar>(
    pt: &PhasePoint<S>,
    params: &SystemParams,
    target: Chart,
    branch: Branch,
) -> Result<PhasePoint<S>, CrtbpError> {
    if pt.chart != Chart::Synodic {
        return Err(CrtbpError::ChartMismatch { expected: Chart::Synodic, got: pt.chart });
    }
    let offset = match target {
        Chart::Lc1 => params.mu::<S>(),
        Chart::Lc2 => params.mu::<S>() - S::one(),
        Chart::Synodic => {
            return Err(CrtbpError::ChartMismatch { expected: Chart::Lc1, got: Chart::Synodic })
        }
    };
    let [x, p, y, q] = pt.coords;
    let zr = x - offset;
    let zi = y;
    let norm_sq = zr * zr + zi * zi;
    if norm_sq.approx().abs() < DENOM_GUARD {
        return Err(CrtbpError::CollisionPoint);
    }
    let norm = norm_sq.sqrt_checked().map_err(|_| CrtbpError::CollisionPoint)?;
    let half = S::from_f64(0.5);

    // principal complex square root: re >= 0
    // re = sqrt((|z| + zr)/2), im = sign(zi) sqrt((|z| - zr)/2), one of the
    // radicands evaluated by the numerically stable quotient formula
    let (re, im) = if zr.approx() >= 0.0 {
        let re = ((norm + zr) * half).sqrt_checked().map_err(|_| CrtbpError::CollisionPoint)?;
        let im = (zi * half).div_checked(re).map_err(|_| CrtbpError::CollisionPoint)?;
        (re, im)
    } else {
        // left half plane: the principal root is discontinuous across the
        // negative real axis; an enclosure straddling the cut has no branch,
        // while a point exactly on it takes the yh >= 0 side
        if zi.contains_zero() && !zi.is_thin_zero() {
            return Err(CrtbpError::CollisionPoint);
        }
        let im_mag =
            ((norm - zr) * half).sqrt_checked().map_err(|_| CrtbpError::CollisionPoint)?;
        let im = if zi.approx() >= 0.0 { im_mag } else { -im_mag };
        let re = (zi * half).div_checked(im).map_err(|_| CrtbpError::CollisionPoint)?;
        (re, im)
    };
    let s = branch.sign::<S>();
    let (xh, yh) = (s * re, s * im);

    // (ph + i qh) = 2 (xh - i yh)(p + i q)
    let two = S::from_f64(2.0);
    let ph = two * (xh * p + yh * q);
    let qh = two * (xh * q - yh * p);
    let coords = [xh, ph, yh, qh];
    Ok(match target {
        Chart::Lc1 => PhasePoint::lc1(coords),
        Chart::Lc2 => PhasePoint::lc2(coords),
        Chart::Synodic => unreachable!(),
    })
}

/// Collision circle of the chosen primary: all physically meaningful
/// collision states at regularization energy c, in that primary's chart.
///
/// m1: (0, sqrt(8(1-mu)) cos t, 0, sqrt(8(1-mu)) sin t); m2: radius sqrt(8 mu).
pub fn collision_circle<S: Scalar>(
    primary: Chart,
    theta: S,
    params: &SystemParams,
) -> Result<PhasePoint<S>, CrtbpError> {
    let mu = params.mu::<S>();
    let radius_sq = match primary {
        Chart::Lc1 => S::from_f64(8.0) * (S::one() - mu),
        Chart::Lc2 => S::from_f64(8.0) * mu,
        Chart::Synodic => {
            return Err(CrtbpError::ChartMismatch { expected: Chart::Lc1, got: Chart::Synodic })
        }
    };
    let r = radius_sq.sqrt_checked()?;
    let coords = [S::zero(), r * theta.cos(), S::zero(), r * theta.sin()];
    Ok(match primary {
        Chart::Lc1 => PhasePoint::lc1(coords),
        Chart::Lc2 => PhasePoint::lc2(coords),
        Chart::Synodic => unreachable!(),
    })
}

/// Derivative of the collision circle with respect to theta.
pub fn collision_circle_deriv<S: Scalar>(
    primary: Chart,
    theta: S,
    params: &SystemParams,
) -> Result<[S; 4], CrtbpError> {
    let mu = params.mu::<S>();
    let radius_sq = match primary {
        Chart::Lc1 => S::from_f64(8.0) * (S::one() - mu),
        Chart::Lc2 => S::from_f64(8.0) * mu,
        Chart::Synodic => {
            return Err(CrtbpError::ChartMismatch { expected: Chart::Lc1, got: Chart::Synodic })
        }
    };
    let r = radius_sq.sqrt_checked()?;
    Ok([S::zero(), -(r * theta.sin()), S::zero(), r * theta.cos()])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> SystemParams {
        SystemParams::new(0.25, 3.2).unwrap()
    }

    #[test]
    fn t1_at_unit_point() {
        let pt = PhasePoint::lc1([1.0, 0.0, 0.0, 0.0]);
        let s = chart_map(&pt, &params()).unwrap();
        assert_eq!(s.approx(), [1.25, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn t1_inverse_round_trip() {
        let p = params();
        let pt = PhasePoint::synodic([1.25, 0.0, 0.0, 0.0]);
        let back = chart_inverse(&pt, &p, Chart::Lc1, Branch::Plus).unwrap();
        let b = back.approx();
        assert!((b[0] - 1.0).abs() < 1e-15 && b[2].abs() < 1e-15);
    }

    #[test]
    fn inverse_velocity_formula() {
        // T1^{-1}((mu - 0.25, 0.1, 0, -0.2)): zh = 0.5i,
        // (ph + i qh) = 2 conj(0.5i)(0.1 - 0.2i) = (-0.2, -0.1)
        let p = params();
        let pt = PhasePoint::synodic([0.25 - 0.25, 0.1, 0.0, -0.2]);
        let inv = chart_inverse(&pt, &p, Chart::Lc1, Branch::Plus).unwrap();
        let v = inv.approx();
        assert!((v[0] - 0.0).abs() < 1e-15);
        assert!((v[2] - 0.5).abs() < 1e-15);
        assert!((v[1] + 0.2).abs() < 1e-15);
        assert!((v[3] + 0.1).abs() < 1e-15);
        // forward map must return the original
        let fwd = chart_map(&inv, &p).unwrap().approx();
        for (a, b) in fwd.iter().zip(pt.approx()) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn double_cover_identity() {
        let p = params();
        let v = [0.3, -0.7, 0.45, 0.2];
        let neg = [-0.3, 0.7, -0.45, -0.2];
        let a = chart_map(&PhasePoint::lc1(v), &p).unwrap().approx();
        let b = chart_map(&PhasePoint::lc1(neg), &p).unwrap().approx();
        assert_eq!(a, b);
    }

    #[test]
    fn collision_point_rejected() {
        let p = params();
        let at_m1 = PhasePoint::synodic([0.25, 0.3, 0.0, 0.1]);
        assert!(matches!(
            chart_inverse(&at_m1, &p, Chart::Lc1, Branch::Plus),
            Err(CrtbpError::CollisionPoint)
        ));
    }

    #[test]
    fn circle_radius_identity() {
        // |(p,q)|^2 = 8 mu = 2 for mu = 1/4
        let p = params();
        for theta in [0.0, 1.0, 2.945584780500716, -2.2] {
            let pt = collision_circle(Chart::Lc2, theta, &p).unwrap();
            let v = pt.approx();
            assert!((v[1] * v[1] + v[3] * v[3] - 2.0).abs() < 1e-14);
            assert_eq!(v[0], 0.0);
            assert_eq!(v[2], 0.0);
        }
        // P1(0; mu=1/2) = (0, 2, 0, 0)
        let half = SystemParams::new(0.5, 3.0).unwrap();
        let pt = collision_circle(Chart::Lc1, 0.0, &half).unwrap();
        assert_eq!(pt.approx(), [0.0, 2.0, 0.0, 0.0]);
    }

    #[test]
    fn table_collision_point() {
        // P2(2.945584780500716; mu=1/4) from the ejection-collision data
        let p = params();
        let pt = collision_circle(Chart::Lc2, 2.945584780500716, &p).unwrap();
        let v = pt.approx();
        assert!((v[1] - -1.387134030283961).abs() < 1e-14);
        assert!((v[3] - 0.275425456390970).abs() < 1e-14);
    }
}
