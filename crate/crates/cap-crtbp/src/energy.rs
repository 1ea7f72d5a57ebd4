//! First integrals: the Jacobi integral of the synodic flow and the
//! regularized energies conserved by the Levi-Civita fields.
//!
//! For every point in a regularized chart, `E(T_i(x)) = c` iff
//! `E_i^c(x) = 0`; in fact `E_i^c = 4 (x^2+y^2) (E \circ T_i - c)`
//! continued analytically through the collision.

use crate::{Chart, CrtbpError, PhasePoint, SystemParams};
use cap_ivp::Scalar;

/// Which first integral to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnergyKind {
    /// Jacobi integral of the synodic field.
    Jacobi,
    /// Regularized energy at m1 (depends on the `c` in params).
    RegM1,
    /// Regularized energy at m2.
    RegM2,
}

impl EnergyKind {
    pub fn expected_chart(self) -> Chart {
        match self {
            EnergyKind::Jacobi => Chart::Synodic,
            EnergyKind::RegM1 => Chart::Lc1,
            EnergyKind::RegM2 => Chart::Lc2,
        }
    }
}

/// The effective potential of the co-rotating frame.
pub fn omega<S: Scalar>(x: S, y: S, params: &SystemParams) -> Result<S, CrtbpError> {
    let mu = params.mu::<S>();
    let one_m_mu = S::one() - mu;
    let half = S::from_f64(0.5);
    let y2 = y * y;
    let dx1 = x - mu;
    let dx2 = x + S::one() - mu;
    let r1_sq = dx1 * dx1 + y2;
    let r2_sq = dx2 * dx2 + y2;
    let r1 = r1_sq.sqrt_checked().map_err(|_| CrtbpError::Singularity)?;
    let r2 = r2_sq.sqrt_checked().map_err(|_| CrtbpError::Singularity)?;
    let inv_r1 = S::one().div_checked(r1).map_err(|_| CrtbpError::Singularity)?;
    let inv_r2 = S::one().div_checked(r2).map_err(|_| CrtbpError::Singularity)?;
    Ok(one_m_mu * (half * r1_sq + inv_r1) + mu * (half * r2_sq + inv_r2))
}

fn jacobi<S: Scalar>(v: &[S; 4], params: &SystemParams) -> Result<S, CrtbpError> {
    let [x, p, y, q] = *v;
    let om = omega(x, y, params)?;
    Ok(S::from_f64(2.0) * om - p * p - q * q)
}

fn reg_energy_m1<S: Scalar>(v: &[S; 4], params: &SystemParams) -> Result<S, CrtbpError> {
    let [x, p, y, q] = *v;
    let mu = params.mu::<S>();
    let c = params.c::<S>();
    let k4 = S::from_f64(4.0);
    let k8 = S::from_f64(8.0);
    let x2 = x * x;
    let y2 = y * y;
    let r2 = x2 + y2;
    let d = r2 * r2 + S::one() + S::from_f64(2.0) * (x2 - y2);
    let sqrt_d = d.sqrt_checked().map_err(|_| CrtbpError::Singularity)?;
    let rat = (k8 * mu * r2).div_checked(sqrt_d).map_err(|_| CrtbpError::Singularity)?;
    Ok(-(q * q) - p * p
        + k4 * r2 * r2 * r2
        + k8 * mu * (x2 * x2 - y2 * y2)
        + k4 * (mu - c) * r2
        + k8 * (S::one() - mu)
        + rat)
}

fn reg_energy_m2<S: Scalar>(v: &[S; 4], params: &SystemParams) -> Result<S, CrtbpError> {
    let [x, p, y, q] = *v;
    let mu = params.mu::<S>();
    let m1 = S::one() - mu;
    let c = params.c::<S>();
    let k4 = S::from_f64(4.0);
    let k8 = S::from_f64(8.0);
    let x2 = x * x;
    let y2 = y * y;
    let r2 = x2 + y2;
    let d = r2 * r2 + S::one() + S::from_f64(2.0) * (y2 - x2);
    let sqrt_d = d.sqrt_checked().map_err(|_| CrtbpError::Singularity)?;
    let rat = (k8 * m1 * r2).div_checked(sqrt_d).map_err(|_| CrtbpError::Singularity)?;
    Ok(-(p * p) - q * q
        + k4 * r2 * r2 * r2
        + k8 * m1 * (y2 * y2 - x2 * x2)
        + k4 * (m1 - c) * r2
        + rat
        + k8 * mu)
}

/// Evaluate the selected first integral; the chart of `pt` must match.
pub fn energy<S: Scalar>(
    pt: &PhasePoint<S>,
    kind: EnergyKind,
    params: &SystemParams,
) -> Result<S, CrtbpError> {
    if pt.chart != kind.expected_chart() {
        return Err(CrtbpError::ChartMismatch {
            expected: kind.expected_chart(),
            got: pt.chart,
        });
    }
    match kind {
        EnergyKind::Jacobi => jacobi(&pt.coords, params),
        EnergyKind::RegM1 => reg_energy_m1(&pt.coords, params),
        EnergyKind::RegM2 => reg_energy_m2(&pt.coords, params),
    }
}
