//! The three vector fields: the synodic PCRTBP field with its dissipative
//! unfolding term, and the Levi-Civita regularized fields at each primary.
//!
//! The large primary m1 (mass 1-mu) sits at (mu, 0); the small primary m2
//! (mass mu) at (mu-1, 0).  The printed forms of the regularized fields in
//! the standard references contain two glyph-level typos; the forms below
//! were rederived and check out against conservation of the regularized
//! energies and conjugacy through the chart transforms.

use crate::{Chart, CrtbpError, PhasePoint, SystemParams};
use cap_ivp::Scalar;

/// r^{-3} = (r^2)^{-3/2} with a singularity guard on the squared distance.
fn inv_r3<S: Scalar>(r_sq: S) -> Result<S, CrtbpError> {
    let r = r_sq.sqrt_checked().map_err(|_| CrtbpError::Singularity)?;
    S::one()
        .div_checked(r_sq * r)
        .map_err(|_| CrtbpError::Singularity)
}

/// Synodic field with unfolding: `f(x,p,y,q) + alpha (0, p, 0, q)`.
pub fn synodic_field<S: Scalar>(
    v: &[S; 4],
    params: &SystemParams,
    alpha: S,
) -> Result<[S; 4], CrtbpError> {
    let [x, p, y, q] = *v;
    let mu = params.mu::<S>();
    let one_m_mu = S::one() - mu;
    let two = S::from_f64(2.0);

    let dx1 = x - mu; // offset from m1
    let dx2 = x + S::one() - mu; // offset from m2
    let y2 = y * y;
    let ir13 = inv_r3(dx1 * dx1 + y2)?;
    let ir23 = inv_r3(dx2 * dx2 + y2)?;

    let row_p = two * q + x - one_m_mu * dx1 * ir13 - mu * dx2 * ir23 + alpha * p;
    let row_q = -(two * p) + y - one_m_mu * y * ir13 - mu * y * ir23 + alpha * q;
    Ok([p, row_p, q, row_q])
}

/// Levi-Civita field regularizing collisions with m1.
pub fn lc1_field<S: Scalar>(v: &[S; 4], params: &SystemParams) -> Result<[S; 4], CrtbpError> {
    let [x, p, y, q] = *v;
    let mu = params.mu::<S>();
    let c = params.c::<S>();
    let k4 = S::from_f64(4.0);
    let k8 = S::from_f64(8.0);
    let k12 = S::from_f64(12.0);
    let k16 = S::from_f64(16.0);
    let k3 = S::from_f64(3.0);

    let x2 = x * x;
    let y2 = y * y;
    let r2 = x2 + y2;
    // squared distance to the image of the other primary
    let d = r2 * r2 + S::one() + S::from_f64(2.0) * (x2 - y2);
    let g = inv_r3(d).map_err(|_| CrtbpError::Singularity)?;
    let mu8g = k8 * mu * g;

    let row_p = k8 * r2 * q + k12 * x * r2 * r2 + k16 * mu * x2 * x + k4 * (mu - c) * x
        + mu8g * (x2 * x - k3 * x * y2 + x);
    let row_q = -(k8 * r2 * p) + k12 * y * r2 * r2 - k16 * mu * y2 * y + k4 * (mu - c) * y
        + mu8g * (-(y2 * y) + k3 * x2 * y + y);
    Ok([p, row_p, q, row_q])
}

/// Levi-Civita field regularizing collisions with m2.
pub fn lc2_field<S: Scalar>(v: &[S; 4], params: &SystemParams) -> Result<[S; 4], CrtbpError> {
    let [x, p, y, q] = *v;
    let mu = params.mu::<S>();
    let c = params.c::<S>();
    let m1 = S::one() - mu; // mass of the *other* primary
    let k4 = S::from_f64(4.0);
    let k8 = S::from_f64(8.0);
    let k12 = S::from_f64(12.0);
    let k16 = S::from_f64(16.0);
    let k3 = S::from_f64(3.0);

    let x2 = x * x;
    let y2 = y * y;
    let r2 = x2 + y2;
    let d = r2 * r2 + S::one() + S::from_f64(2.0) * (y2 - x2);
    let g = inv_r3(d).map_err(|_| CrtbpError::Singularity)?;
    let m18g = k8 * m1 * g;

    let row_p = k8 * r2 * q + k12 * x * r2 * r2 - k16 * m1 * x2 * x + k4 * (m1 - c) * x
        + m18g * (-(x2 * x) + k3 * x * y2 + x);
    let row_q = -(k8 * r2 * p) + k12 * y * r2 * r2 + k16 * m1 * y2 * y + k4 * (m1 - c) * y
        + m18g * (y2 * y - k3 * x2 * y + y);
    Ok([p, row_p, q, row_q])
}

/// Field dispatch on the chart of `pt`; `alpha` only acts on the synodic
/// field (the regularized flows carry no unfolding term).
pub fn field<S: Scalar>(
    pt: &PhasePoint<S>,
    params: &SystemParams,
    alpha: S,
) -> Result<[S; 4], CrtbpError> {
    match pt.chart {
        Chart::Synodic => synodic_field(&pt.coords, params, alpha),
        Chart::Lc1 => lc1_field(&pt.coords, params),
        Chart::Lc2 => lc2_field(&pt.coords, params),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::l4_point;

    #[test]
    fn l4_is_an_equilibrium() {
        let params = SystemParams::new(0.5, 3.0).unwrap();
        let l4: [f64; 4] = l4_point(&params);
        let f = synodic_field(&l4, &params, 0.0).unwrap();
        for c in f {
            assert!(c.abs() < 1e-15, "residual {c}");
        }
    }

    #[test]
    fn lc1_origin_with_zero_velocity_is_stationary() {
        // every term carries a factor of x, y, p or q
        let params = SystemParams::new(0.5, 3.0).unwrap();
        let f = lc1_field(&[0.0, 0.0, 0.0, 0.0], &params).unwrap();
        assert_eq!(f, [0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn singularity_at_primary_rejected_for_intervals() {
        use cap_ivp::Interval;
        let params = SystemParams::new(0.25, 3.2).unwrap();
        let at_m1 = [
            Interval::point(0.25),
            Interval::ZERO,
            Interval::ZERO,
            Interval::ZERO,
        ];
        assert!(matches!(
            synodic_field(&at_m1, &params, Interval::ZERO),
            Err(CrtbpError::Singularity)
        ));
    }
}
