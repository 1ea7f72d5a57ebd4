//! The triangular libration points and the synodic Jacobian (via jets).

use crate::{synodic_field, CrtbpError, SystemParams};
use cap_ivp::{Dual, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Libration {
    L4,
    L5,
}

/// L4 = (mu - 1/2, 0, sqrt(3)/2, 0): equilateral triangle with the
/// primaries, upper half plane.
pub fn l4_point<S: Scalar>(params: &SystemParams) -> [S; 4] {
    let mu = params.mu::<S>();
    let half = S::from_f64(0.5);
    let root3_half = (S::from_f64(3.0)).sqrt_checked().expect("sqrt 3") * half;
    [mu - half, S::zero(), root3_half, S::zero()]
}

pub fn l5_point<S: Scalar>(params: &SystemParams) -> [S; 4] {
    let mut p = l4_point::<S>(params);
    p[2] = -p[2];
    p
}

pub fn libration_point<S: Scalar>(which: Libration, params: &SystemParams) -> [S; 4] {
    match which {
        Libration::L4 => l4_point(params),
        Libration::L5 => l5_point(params),
    }
}

/// 4x4 Jacobian of the (conservative) synodic field at `v`.
pub fn synodic_jacobian<S: Scalar>(
    v: &[S; 4],
    params: &SystemParams,
) -> Result<[[S; 4]; 4], CrtbpError> {
    let jet: [Dual<4, S>; 4] = [
        Dual::variable(v[0], 0),
        Dual::variable(v[1], 1),
        Dual::variable(v[2], 2),
        Dual::variable(v[3], 3),
    ];
    let f = synodic_field(&jet, params, Dual::constant(S::zero()))?;
    let mut out = [[S::zero(); 4]; 4];
    for (i, fi) in f.iter().enumerate() {
        out[i] = fi.d;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobian_matches_finite_differences() {
        let params = SystemParams::new(0.5, 3.0).unwrap();
        let v = [0.1, -0.2, 0.8, 0.05];
        let jac = synodic_jacobian(&v, &params).unwrap();
        let h = 1e-6;
        for j in 0..4 {
            let mut vp = v;
            let mut vm = v;
            vp[j] += h;
            vm[j] -= h;
            let fp = synodic_field(&vp, &params, 0.0).unwrap();
            let fm = synodic_field(&vm, &params, 0.0).unwrap();
            for i in 0..4 {
                let fd = (fp[i] - fm[i]) / (2.0 * h);
                assert!(
                    (jac[i][j] - fd).abs() < 1e-8,
                    "d f{i}/d x{j}: jet {} vs fd {fd}",
                    jac[i][j]
                );
            }
        }
    }

    #[test]
    fn l4_trace_is_zero() {
        let params = SystemParams::new(0.5, 3.0).unwrap();
        let l4 = l4_point::<f64>(&params);
        let jac = synodic_jacobian(&l4, &params).unwrap();
        let trace: f64 = (0..4).map(|i| jac[i][i]).sum();
        assert!(trace.abs() < 1e-14);
    }
}
