//! Discrete time-reversing symmetries of the synodic problem and the
//! parameterized self-symmetric boundary sets used by the periodic-family
//! shooting operators.

use crate::{omega, Chart, CrtbpError, PhasePoint, SystemParams};
use cap_ivp::Scalar;

/// The two linear involutions conjugating the flow to its time reversal.
/// `R` is a symmetry only for equal masses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymKind {
    /// S(x,p,y,q) = (x,-p,-y,q)
    S,
    /// R(x,p,y,q) = (-x,p,y,-q)
    R,
}

pub fn symmetry<S: Scalar>(pt: &PhasePoint<S>, kind: SymKind) -> PhasePoint<S> {
    debug_assert_eq!(pt.chart, Chart::Synodic);
    let [x, p, y, q] = pt.coords;
    let coords = match kind {
        SymKind::S => [x, -p, -y, q],
        SymKind::R => [-x, p, y, -q],
    };
    PhasePoint::synodic(coords)
}

/// One-parameter charts of self-symmetric sets, each lying exactly on the
/// appropriate energy zero-set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymmetricBoundary {
    /// (0, p(yh,c), yh, 0) in the m1-regularized chart, on {E_1^c = 0}.
    SHatLc1,
    /// (xt, 0, 0, q(xt,c)) in the m2-regularized chart, on {E_2^c = 0}.
    STildeLc2,
    /// (0, +sqrt(2 Omega(0,y) - c), y, 0) in synodic coordinates, on {E = c}.
    RAxisPlus,
    /// (0, -sqrt(2 Omega(0,y) - c), y, 0).
    RAxisMinus,
}

impl SymmetricBoundary {
    pub fn chart(self) -> Chart {
        match self {
            SymmetricBoundary::SHatLc1 => Chart::Lc1,
            SymmetricBoundary::STildeLc2 => Chart::Lc2,
            _ => Chart::Synodic,
        }
    }
}

fn radicand_lc1<S: Scalar>(yh: S, params: &SystemParams) -> Result<S, CrtbpError> {
    let mu = params.mu::<S>();
    let c = params.c::<S>();
    let y2 = yh * yh;
    let y4 = y2 * y2;
    let k4 = S::from_f64(4.0);
    let k8 = S::from_f64(8.0);
    let den = (y4 + S::one() - S::from_f64(2.0) * y2)
        .sqrt_checked()
        .map_err(|_| CrtbpError::Singularity)?;
    let rat = (k8 * mu * y2).div_checked(den).map_err(|_| CrtbpError::Singularity)?;
    Ok(k4 * y4 * y2 - k8 * mu * y4 + k4 * (mu - c) * y2 + rat + k8 * (S::one() - mu))
}

fn radicand_lc2<S: Scalar>(xt: S, params: &SystemParams) -> Result<S, CrtbpError> {
    let mu = params.mu::<S>();
    let m1 = S::one() - mu;
    let c = params.c::<S>();
    let x2 = xt * xt;
    let x4 = x2 * x2;
    let k4 = S::from_f64(4.0);
    let k8 = S::from_f64(8.0);
    let den = (x4 + S::one() - S::from_f64(2.0) * x2)
        .sqrt_checked()
        .map_err(|_| CrtbpError::Singularity)?;
    let rat = (k8 * m1 * x2).div_checked(den).map_err(|_| CrtbpError::Singularity)?;
    Ok(k4 * x4 * x2 - k8 * m1 * x4 + k4 * (m1 - c) * x2 + rat + k8 * mu)
}

/// Square root of a boundary radicand; rejects negative radicands in both
/// instantiations (interval sqrt errors, float sqrt yields NaN).
fn checked_root<S: Scalar>(rad: S) -> Result<S, CrtbpError> {
    let root = rad
        .sqrt_checked()
        .map_err(|_| CrtbpError::BoundaryDomain(rad.approx()))?;
    if root.approx().is_nan() {
        return Err(CrtbpError::BoundaryDomain(rad.approx()));
    }
    Ok(root)
}

/// Point of the chosen boundary at parameter `coord`.
pub fn sym_boundary<S: Scalar>(
    kind: SymmetricBoundary,
    coord: S,
    params: &SystemParams,
) -> Result<PhasePoint<S>, CrtbpError> {
    match kind {
        SymmetricBoundary::SHatLc1 => {
            let rad = radicand_lc1(coord, params)?;
            let p = checked_root(rad)?;
            Ok(PhasePoint::lc1([S::zero(), p, coord, S::zero()]))
        }
        SymmetricBoundary::STildeLc2 => {
            let rad = radicand_lc2(coord, params)?;
            let q = checked_root(rad)?;
            Ok(PhasePoint::lc2([coord, S::zero(), S::zero(), q]))
        }
        SymmetricBoundary::RAxisPlus | SymmetricBoundary::RAxisMinus => {
            let om = omega(S::zero(), coord, params)?;
            let rad = S::from_f64(2.0) * om - params.c::<S>();
            let p = checked_root(rad)?;
            let p = if kind == SymmetricBoundary::RAxisMinus { -p } else { p };
            Ok(PhasePoint::synodic([S::zero(), p, coord, S::zero()]))
        }
    }
}

/// d/dcoord of `sym_boundary`, computed with a jet.
pub fn sym_boundary_deriv<S: Scalar>(
    kind: SymmetricBoundary,
    coord: S,
    params: &SystemParams,
) -> Result<[S; 4], CrtbpError> {
    use cap_ivp::Dual;
    let d: Dual<1, S> = Dual::variable(coord, 0);
    let pt = sym_boundary(kind, d, params)?;
    Ok([
        pt.coords[0].d[0],
        pt.coords[1].d[0],
        pt.coords[2].d[0],
        pt.coords[3].d[0],
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{energy, EnergyKind};

    #[test]
    fn s_is_an_involution() {
        let pt = PhasePoint::synodic([0.3, -0.1, 0.7, 0.2]);
        let twice = symmetry(&symmetry(&pt, SymKind::S), SymKind::S);
        assert_eq!(twice.approx(), pt.approx());
        let twice_r = symmetry(&symmetry(&pt, SymKind::R), SymKind::R);
        assert_eq!(twice_r.approx(), pt.approx());
    }

    #[test]
    fn boundaries_sit_on_energy_zero_sets() {
        let params = SystemParams::earth_moon(1.4340459493);
        for yh in [0.0, 0.4, -0.3, 0.8] {
            let pt = sym_boundary(SymmetricBoundary::SHatLc1, yh, &params).unwrap();
            let e = energy(&pt, EnergyKind::RegM1, &params).unwrap();
            assert!(e.abs() < 1e-12, "E1^c = {e} at yh = {yh}");
        }
        for xt in [0.07, -0.05, 0.3] {
            let pt = sym_boundary(SymmetricBoundary::STildeLc2, xt, &params).unwrap();
            let e = energy(&pt, EnergyKind::RegM2, &params).unwrap();
            assert!(e.abs() < 1e-12, "E2^c = {e} at xt = {xt}");
        }
        let half = SystemParams::new(0.5, 2.05991609689).unwrap();
        for y in [2.15, 1.9, -0.38367247647373] {
            let pt = sym_boundary(SymmetricBoundary::RAxisPlus, y, &half).unwrap();
            let e = energy(&pt, EnergyKind::Jacobi, &half).unwrap();
            assert!((e - 2.05991609689).abs() < 1e-12);
        }
    }

    #[test]
    fn lc1_boundary_at_zero_reduces_to_circle_radius() {
        // p(0, c) = sqrt(8(1-mu)) for every c
        let params = SystemParams::new(0.25, -7.3).unwrap();
        let pt = sym_boundary(SymmetricBoundary::SHatLc1, 0.0, &params).unwrap();
        let expect = (8.0f64 * 0.75).sqrt();
        assert!((pt.approx()[1] - expect).abs() < 1e-14);
    }

    #[test]
    fn out_of_reach_coordinate_rejected() {
        // huge c makes the radicand negative
        let params = SystemParams::new(0.25, 1e6).unwrap();
        assert!(matches!(
            sym_boundary(SymmetricBoundary::RAxisPlus, 0.5, &params),
            Err(CrtbpError::BoundaryDomain(_))
        ));
    }

    #[test]
    fn table4_boundary_row() {
        // at the collision value the boundary point is the circle point
        let params = SystemParams::earth_moon(1.4340459493);
        let pt = sym_boundary(SymmetricBoundary::SHatLc1, 0.0, &params).unwrap();
        assert!((pt.approx()[1] - 2.8111911379251).abs() < 1e-12);
    }
}
