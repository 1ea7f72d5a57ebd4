//! Fast floating-point Taylor integration with dense output and optional
//! jet transport of first-order spatial and parametric variationals.

use crate::tape::{Tape, TapeExec};
use crate::FlowError;
use cap_ivp::{Dual, Scalar};

/// One Taylor step's polynomial in scaled time sigma = (t - t0)/h.
#[derive(Clone, Debug)]
pub struct DenseStep {
    pub t0: f64,
    pub h: f64,
    /// coeffs[k][i]: order-k coefficient of component i (h folded in).
    pub coeffs: Vec<[f64; 4]>,
}

impl DenseStep {
    pub fn eval(&self, t: f64) -> [f64; 4] {
        let sigma = (t - self.t0) / self.h;
        let mut out = [0.0; 4];
        for k in (0..self.coeffs.len()).rev() {
            for i in 0..4 {
                out[i] = out[i] * sigma + self.coeffs[k][i];
            }
        }
        out
    }

    /// Synodic time accumulated by the Levi-Civita rescaling over this step:
    /// 4 * integral of (x^2 + y^2).
    pub fn lc_time_increment(&self) -> f64 {
        let n = self.coeffs.len();
        let mut total = 0.0;
        for m in 0..(2 * n - 1) {
            let mut conv = 0.0;
            for j in 0..n {
                if m >= j && m - j < n {
                    conv += self.coeffs[j][0] * self.coeffs[m - j][0]
                        + self.coeffs[j][2] * self.coeffs[m - j][2];
                }
            }
            total += conv / (m + 1) as f64;
        }
        4.0 * self.h * total
    }
}

/// Result of a numeric flow: endpoint, variationals, dense output.
#[derive(Clone, Debug)]
pub struct NumericFlowResult {
    pub x: [f64; 4],
    /// d x(t) / d x0
    pub dx: [[f64; 4]; 4],
    /// d x(t) / d (own field parameter)
    pub dparam: [f64; 4],
    pub steps: Vec<DenseStep>,
}

/// Taylor-series driver in plain floats.
pub struct NumericFlow<'a> {
    pub tape: &'a Tape,
    /// parameter values (slot 1 is the field's own scalar parameter)
    pub params: Vec<f64>,
    pub order: usize,
}

type J5 = Dual<5, f64>;

impl<'a> NumericFlow<'a> {
    /// Integrate for time `t` in `n_steps` equal Taylor steps.
    pub fn flow(
        &self,
        x0: [f64; 4],
        t: f64,
        n_steps: usize,
        variational: bool,
    ) -> Result<NumericFlowResult, FlowError> {
        assert!(n_steps > 0);
        let h = t / n_steps as f64;
        let mut x = x0;
        let mut dx = [[0.0; 4]; 4];
        for (i, row) in dx.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        let mut dparam = [0.0; 4];
        let mut dense = Vec::with_capacity(n_steps);

        for step in 0..n_steps {
            if variational {
                let (coeffs, jac, jp) = self.step_var(x, h)?;
                // compose: new variational = step jacobian * accumulated
                let mut njac = [[0.0; 4]; 4];
                let mut nparam = [0.0; 4];
                for i in 0..4 {
                    for j in 0..4 {
                        njac[i][j] = (0..4).map(|k| jac[i][k] * dx[k][j]).sum();
                    }
                    nparam[i] = (0..4).map(|k| jac[i][k] * dparam[k]).sum::<f64>() + jp[i];
                }
                dx = njac;
                dparam = nparam;
                let endpoint = eval_poly(&coeffs);
                dense.push(DenseStep { t0: step as f64 * h, h, coeffs });
                x = endpoint;
            } else {
                let coeffs = self.step_plain(x, h)?;
                let endpoint = eval_poly(&coeffs);
                dense.push(DenseStep { t0: step as f64 * h, h, coeffs });
                x = endpoint;
            }
            if !x.iter().all(|v| v.is_finite()) {
                return Err(FlowError::BlowUp);
            }
        }
        Ok(NumericFlowResult { x, dx, dparam, steps: dense })
    }

    fn step_plain(&self, x: [f64; 4], h: f64) -> Result<Vec<[f64; 4]>, FlowError> {
        let mut exec = TapeExec::<f64>::new(self.tape, self.params.clone(), self.order);
        let mut coeffs: Vec<[f64; 4]> = Vec::with_capacity(self.order + 1);
        coeffs.push(x);
        for k in 0..self.order {
            for i in 0..4 {
                exec.set_var(self.tape, i, k, coeffs[k][i]);
            }
            exec.advance(self.tape, k).map_err(|_| FlowError::SingularityApproach)?;
            let scale = h / (k + 1) as f64;
            let mut next = [0.0; 4];
            for i in 0..4 {
                next[i] = exec.output(self.tape, i, k) * scale;
            }
            coeffs.push(next);
        }
        Ok(coeffs)
    }

    /// One step carrying a 5-jet: d/dx0 (4 slots) and d/dparam (slot 4).
    #[allow(clippy::type_complexity)]
    fn step_var(
        &self,
        x: [f64; 4],
        h: f64,
    ) -> Result<(Vec<[f64; 4]>, [[f64; 4]; 4], [f64; 4]), FlowError> {
        let params: Vec<J5> = self
            .params
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                if Some(i) == self.tape.diff_param {
                    Dual::variable(p, 4)
                } else {
                    Dual::constant(p)
                }
            })
            .collect();
        let mut exec = TapeExec::<J5>::new(self.tape, params, self.order);
        let mut coeffs: Vec<[J5; 4]> = Vec::with_capacity(self.order + 1);
        coeffs.push([
            Dual::variable(x[0], 0),
            Dual::variable(x[1], 1),
            Dual::variable(x[2], 2),
            Dual::variable(x[3], 3),
        ]);
        for k in 0..self.order {
            for i in 0..4 {
                exec.set_var(self.tape, i, k, coeffs[k][i]);
            }
            exec.advance(self.tape, k).map_err(|_| FlowError::SingularityApproach)?;
            let scale = J5::from_f64(h / (k + 1) as f64);
            let mut next = [J5::zero(); 4];
            for i in 0..4 {
                next[i] = exec.output(self.tape, i, k) * scale;
            }
            coeffs.push(next);
        }
        // sum the series at sigma = 1
        let mut end = [J5::zero(); 4];
        for c in coeffs.iter().rev() {
            for i in 0..4 {
                end[i] = end[i] + c[i];
            }
        }
        let mut jac = [[0.0; 4]; 4];
        let mut jp = [0.0; 4];
        let mut plain = Vec::with_capacity(coeffs.len());
        for c in &coeffs {
            plain.push([c[0].v, c[1].v, c[2].v, c[3].v]);
        }
        for i in 0..4 {
            jac[i] = [end[i].d[0], end[i].d[1], end[i].d[2], end[i].d[3]];
            jp[i] = end[i].d[4];
        }
        Ok((plain, jac, jp))
    }
}

fn eval_poly(coeffs: &[[f64; 4]]) -> [f64; 4] {
    let mut out = [0.0; 4];
    for c in coeffs.iter().rev() {
        for i in 0..4 {
            out[i] += c[i];
        }
    }
    out
}
