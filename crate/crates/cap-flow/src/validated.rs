//! Rigorous Taylor integration of interval boxes.
//!
//! Each step builds (i) an a-priori enclosure of the solution over the step
//! by Picard iteration on a padded box, (ii) Taylor coefficients of the
//! solution and its first-order spatial/parametric variationals by jet
//! transport over the field tape, and (iii) a Lagrange remainder from the
//! order-(K+1) coefficient evaluated on the a-priori enclosure.  Wrapping
//! is controlled with a QR-factorized moving frame (Lohner) for the state
//! doubleton and the 4x5 augmented variational block.

use crate::tape::{Tape, TapeExec};
use crate::FlowError;
use cap_ivp::{verified_inverse, Dual, FloatMatrix, IMatrix, Interval, Scalar};

type J5 = Dual<5, Interval>;

const MAX_PICARD_RETRIES: usize = 20;

/// Interval 4-vector helpers.
pub type Box4 = [Interval; 4];

pub fn hull_contains(outer: &Box4, inner: &Box4) -> bool {
    outer.iter().zip(inner).all(|(o, i)| o.contains_interval(i))
}

fn box_add(a: &Box4, b: &Box4) -> Box4 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

fn box_scale(a: &Box4, s: Interval) -> Box4 {
    [a[0] * s, a[1] * s, a[2] * s, a[3] * s]
}

/// Dense validated output of one internal step, in scaled time
/// sigma = (t - t0)/h: `x(sigma) in sum coeffs[k] sigma^k + rem sigma^{K+1}`
/// for every initial point of the step's input set.
#[derive(Clone, Debug)]
pub struct ValidatedStepPoly {
    pub h: Interval,
    pub coeffs: Vec<Box4>,
    pub rem: Box4,
}

/// Endpoint data of a validated flow.
#[derive(Clone, Debug)]
pub struct ValidatedFlowResult {
    /// Enclosure of the endpoint over all initial points.
    pub x: Box4,
    /// Enclosure of d phi/d x0 over the input box (None if not requested).
    pub jac: Option<[[Interval; 4]; 4]>,
    /// Enclosure of d phi/d own-parameter.
    pub jparam: Option<Box4>,
    pub steps: Vec<ValidatedStepPoly>,
}

/// State of the Lohner doubleton `X = m + C r`.
struct Doubleton {
    m: [f64; 4],
    c: FloatMatrix,
    r: Box4,
}

impl Doubleton {
    fn from_box(x: &Box4) -> Self {
        let m = [x[0].mid(), x[1].mid(), x[2].mid(), x[3].mid()];
        let mut r = [Interval::ZERO; 4];
        for i in 0..4 {
            r[i] = x[i] - Interval::point(m[i]);
        }
        Doubleton { m, c: FloatMatrix::identity(4), r }
    }

    fn hull(&self) -> Box4 {
        let mut out = [Interval::ZERO; 4];
        for i in 0..4 {
            let mut acc = Interval::point(self.m[i]);
            for j in 0..4 {
                acc = acc + Interval::point(self.c.get(i, j)) * self.r[j];
            }
            out[i] = acc;
        }
        out
    }
}

/// Variational doubleton `W = P + Cw Rw`, 4x5 (4 spatial + 1 parametric).
struct VarDoubleton {
    p: [[f64; 5]; 4],
    cw: FloatMatrix,
    rw: [[Interval; 5]; 4],
}

impl VarDoubleton {
    fn identity() -> Self {
        let mut p = [[0.0; 5]; 4];
        for (i, row) in p.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        VarDoubleton { p, cw: FloatMatrix::identity(4), rw: [[Interval::ZERO; 5]; 4] }
    }

    fn hull(&self) -> [[Interval; 5]; 4] {
        let mut out = [[Interval::ZERO; 5]; 4];
        for i in 0..4 {
            for j in 0..5 {
                let mut acc = Interval::point(self.p[i][j]);
                for k in 0..4 {
                    acc = acc + Interval::point(self.cw.get(i, k)) * self.rw[k][j];
                }
                out[i][j] = acc;
            }
        }
        out
    }
}

pub struct ValidatedFlow<'a> {
    pub tape: &'a Tape,
    /// interval parameter values (slot 1 = own scalar parameter)
    pub params: Vec<Interval>,
    pub order: usize,
}

impl<'a> ValidatedFlow<'a> {
    fn field_box(&self, x: &Box4) -> Result<Box4, FlowError> {
        crate::tape::eval_field(self.tape, x, self.params.clone())
            .map_err(|_| FlowError::SingularityApproach)
    }

    /// Order-0 field with jets: value, spatial jacobian and parametric
    /// derivative over the box.
    #[allow(clippy::type_complexity)]
    fn field_jet(&self, x: &Box4) -> Result<(Box4, [[Interval; 4]; 4], Box4), FlowError> {
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
        let vars = [
            Dual::variable(x[0], 0),
            Dual::variable(x[1], 1),
            Dual::variable(x[2], 2),
            Dual::variable(x[3], 3),
        ];
        let f = crate::tape::eval_field(self.tape, &vars, params)
            .map_err(|_| FlowError::SingularityApproach)?;
        let mut val = [Interval::ZERO; 4];
        let mut jac = [[Interval::ZERO; 4]; 4];
        let mut jp = [Interval::ZERO; 4];
        for i in 0..4 {
            val[i] = f[i].v;
            jac[i] = [f[i].d[0], f[i].d[1], f[i].d[2], f[i].d[3]];
            jp[i] = f[i].d[4];
        }
        Ok((val, jac, jp))
    }

    /// A-priori enclosure of the solution through `x` over times `t_hull`.
    fn picard_enclosure(&self, x: &Box4, t_hull: Interval) -> Result<Box4, FlowError> {
        let f0 = self.field_box(x)?;
        let mut pad = 1e-14;
        let mut z = box_add(x, &box_scale(&f0, t_hull));
        for i in 0..4 {
            z[i] = z[i].inflate(pad + 0.1 * z[i].width());
        }
        for _ in 0..MAX_PICARD_RETRIES {
            let fz = self.field_box(&z)?;
            let znew = box_add(x, &box_scale(&fz, t_hull));
            if hull_contains(&z, &znew) {
                return Ok(z);
            }
            pad *= 4.0;
            for i in 0..4 {
                z[i] = z[i].hull(&znew[i]).inflate(pad + 0.2 * znew[i].width());
            }
        }
        Err(FlowError::BlowUp)
    }

    /// A-priori enclosure of the 4x5 augmented variational block.
    fn picard_variational(
        &self,
        z: &Box4,
        t_hull: Interval,
        w0: &[[Interval; 5]; 4],
    ) -> Result<[[Interval; 5]; 4], FlowError> {
        let (_, jac, jp) = self.field_jet(z)?;
        let mut w = *w0;
        // inflate a bit to speed containment
        for row in w.iter_mut() {
            for e in row.iter_mut() {
                *e = e.inflate(1e-12 + 0.1 * e.width());
            }
        }
        for _ in 0..MAX_PICARD_RETRIES {
            // wnew = w0 + t * (jac w + [0|jp])
            let mut wnew = *w0;
            for i in 0..4 {
                for col in 0..5 {
                    let mut acc = Interval::ZERO;
                    for k in 0..4 {
                        acc = acc + jac[i][k] * w[k][col];
                    }
                    if col == 4 {
                        acc = acc + jp[i];
                    }
                    wnew[i][col] = wnew[i][col] + t_hull * acc;
                }
            }
            let contained = (0..4).all(|i| (0..5).all(|j| w[i][j].contains_interval(&wnew[i][j])));
            if contained {
                return Ok(w);
            }
            for i in 0..4 {
                for j in 0..5 {
                    w[i][j] = w[i][j].hull(&wnew[i][j]).inflate(1e-12 + 0.2 * wnew[i][j].width());
                }
            }
        }
        Err(FlowError::BlowUp)
    }

    /// Taylor coefficients (orders 0..=K) of the sigma-scaled solution with
    /// jets, seeded at `x` with variational seed `w`.
    fn taylor_jets(
        &self,
        x: &Box4,
        w: &[[Interval; 5]; 4],
        h: Interval,
        orders: usize,
    ) -> Result<Vec<[J5; 4]>, FlowError> {
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
        let mut exec = TapeExec::<J5>::new(self.tape, params, orders);
        let hj = J5::constant(h);
        let mut coeffs: Vec<[J5; 4]> = Vec::with_capacity(orders + 1);
        let seed: [J5; 4] = std::array::from_fn(|i| Dual { v: x[i], d: std::array::from_fn(|j| w[i][j]) });
        coeffs.push(seed);
        for k in 0..orders {
            for i in 0..4 {
                exec.set_var(self.tape, i, k, coeffs[k][i]);
            }
            exec.advance(self.tape, k).map_err(|_| FlowError::SingularityApproach)?;
            let scale = J5::from_f64(1.0 / (k + 1) as f64);
            let mut next = [J5::zero(); 4];
            for i in 0..4 {
                next[i] = exec.output(self.tape, i, k) * hj * scale;
            }
            coeffs.push(next);
        }
        Ok(coeffs)
    }

    /// Plain (no jets) sigma-scaled Taylor coefficients seeded at `x`.
    fn taylor_plain(&self, x: &Box4, h: Interval, orders: usize) -> Result<Vec<Box4>, FlowError> {
        let mut exec = TapeExec::<Interval>::new(self.tape, self.params.clone(), orders);
        let mut coeffs: Vec<Box4> = Vec::with_capacity(orders + 1);
        coeffs.push(*x);
        for k in 0..orders {
            for i in 0..4 {
                exec.set_var(self.tape, i, k, coeffs[k][i]);
            }
            exec.advance(self.tape, k).map_err(|_| FlowError::SingularityApproach)?;
            let scale = Interval::ratio(1.0, (k + 1) as f64);
            let mut next = [Interval::ZERO; 4];
            for i in 0..4 {
                next[i] = exec.output(self.tape, i, k) * h * scale;
            }
            coeffs.push(next);
        }
        Ok(coeffs)
    }

    /// Flow the box for total time `t` (an interval; may be thin, wide or
    /// negative) in `n_steps` equal Taylor steps.
    pub fn flow_box(
        &self,
        x0: &Box4,
        t: Interval,
        n_steps: usize,
        want_jac: bool,
    ) -> Result<ValidatedFlowResult, FlowError> {
        assert!(n_steps > 0);
        let h = t * Interval::ratio(1.0, n_steps as f64);
        let t_hull = h.hull(&Interval::ZERO);

        let mut state = Doubleton::from_box(x0);
        let mut var = VarDoubleton::identity();
        let mut dense = Vec::with_capacity(n_steps);

        let mut w_id = [[Interval::ZERO; 5]; 4];
        for (i, row) in w_id.iter_mut().enumerate() {
            row[i] = Interval::ONE;
        }

        for _ in 0..n_steps {
            let xh = state.hull();
            let z = self.picard_enclosure(&xh, t_hull)?;
            let zw = self.picard_variational(&z, t_hull, &w_id)?;

            // thin-center polynomial for the mean-value form
            let m_box: Box4 = std::array::from_fn(|i| Interval::point(state.m[i]));
            let center = self.taylor_plain(&m_box, h, self.order)?;
            // jets over the step's input hull: coefficients enclose those of
            // every member trajectory, dual slots build the step jacobian
            let boxco = self.taylor_jets(&xh, &w_id, h, self.order)?;
            // Lagrange remainder of the augmented system on the enclosure
            let rem = self.taylor_jets(&z, &zw, h, self.order + 1)?[self.order + 1];

            let mut jstep = [[Interval::ZERO; 4]; 4];
            let mut jpar = [Interval::ZERO; 4];
            for i in 0..4 {
                for j in 0..4 {
                    let mut acc = rem[i].d[j];
                    for c in &boxco {
                        acc = acc + c[i].d[j];
                    }
                    jstep[i][j] = acc;
                }
                let mut accp = rem[i].d[4];
                for c in &boxco {
                    accp = accp + c[i].d[4];
                }
                jpar[i] = accp;
            }

            let mut phi_m = [Interval::ZERO; 4];
            for i in 0..4 {
                let mut acc = rem[i].v;
                for c in &center {
                    acc = acc + c[i];
                }
                phi_m[i] = acc;
            }

            dense.push(ValidatedStepPoly {
                h,
                coeffs: boxco.iter().map(|c| std::array::from_fn(|i| c[i].v)).collect(),
                rem: std::array::from_fn(|i| rem[i].v),
            });

            self.lohner_update(&mut state, &mut var, &phi_m, &jstep, &jpar)?;
        }

        let x = state.hull();
        let (jac, jparam) = if want_jac {
            let w = var.hull();
            let mut jac = [[Interval::ZERO; 4]; 4];
            let mut jp = [Interval::ZERO; 4];
            for i in 0..4 {
                for j in 0..4 {
                    jac[i][j] = w[i][j];
                }
                jp[i] = w[i][4];
            }
            (Some(jac), Some(jp))
        } else {
            (None, None)
        };
        Ok(ValidatedFlowResult { x, jac, jparam, steps: dense })
    }

    /// Mean-value update of the two doubletons by one step.
    fn lohner_update(
        &self,
        state: &mut Doubleton,
        var: &mut VarDoubleton,
        phi_m: &Box4,
        jstep: &[[Interval; 4]; 4],
        jpar_step: &Box4,
    ) -> Result<(), FlowError> {
        // --- state: phi(X) within [phi(m)] + (J C) r ---
        let jmid = FloatMatrix::from_rows(
            &(0..4)
                .map(|i| (0..4).map(|j| jstep[i][j].mid()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        );
        let mc = mat_mul_float(&jmid, &state.c);
        let q = qr_orthonormal(&mc);
        let qinv = verified_inverse(&q).map_err(|_| FlowError::BlowUp)?;

        // JC as interval matrix
        let mut jc = IMatrix::zeros(4, 4);
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = Interval::ZERO;
                for k in 0..4 {
                    acc = acc + jstep[i][k] * Interval::point(state.c.get(k, j));
                }
                jc[(i, j)] = acc;
            }
        }
        let new_m: [f64; 4] = std::array::from_fn(|i| phi_m[i].mid());
        // r' = (Qinv JC) r + Qinv (phi_m - m')
        let qinv_jc = qinv.mul_mat(&jc);
        let mut rnew = [Interval::ZERO; 4];
        for i in 0..4 {
            let mut acc = Interval::ZERO;
            for j in 0..4 {
                acc = acc + qinv_jc[(i, j)] * state.r[j];
            }
            for j in 0..4 {
                acc = acc + qinv[(i, j)] * (phi_m[j] - Interval::point(new_m[j]));
            }
            rnew[i] = acc;
        }
        state.m = new_m;
        state.c = q.clone();
        state.r = rnew;

        // --- variational: W' = J W + [0 | jpar] ---
        // J P + B
        let mut jp_b = [[Interval::ZERO; 5]; 4];
        for i in 0..4 {
            for col in 0..5 {
                let mut acc = Interval::ZERO;
                for k in 0..4 {
                    acc = acc + jstep[i][k] * Interval::point(var.p[k][col]);
                }
                if col == 4 {
                    acc = acc + jpar_step[i];
                }
                jp_b[i][col] = acc;
            }
        }
        // J Cw (interval)
        let mut jcw = IMatrix::zeros(4, 4);
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = Interval::ZERO;
                for k in 0..4 {
                    acc = acc + jstep[i][k] * Interval::point(var.cw.get(k, j));
                }
                jcw[(i, j)] = acc;
            }
        }
        let mcw = mat_mul_float(&jmid, &var.cw);
        let qw = qr_orthonormal(&mcw);
        let qwinv = verified_inverse(&qw).map_err(|_| FlowError::BlowUp)?;
        let new_p: [[f64; 5]; 4] = std::array::from_fn(|i| std::array::from_fn(|j| jp_b[i][j].mid()));
        let qwinv_jcw = qwinv.mul_mat(&jcw);
        let mut rwnew = [[Interval::ZERO; 5]; 4];
        for i in 0..4 {
            for col in 0..5 {
                let mut acc = Interval::ZERO;
                for j in 0..4 {
                    acc = acc + qwinv_jcw[(i, j)] * var.rw[j][col];
                }
                for j in 0..4 {
                    acc = acc + qwinv[(i, j)] * (jp_b[j][col] - Interval::point(new_p[j][col]));
                }
                rwnew[i][col] = acc;
            }
        }
        var.p = new_p;
        var.cw = qw;
        var.rw = rwnew;
        Ok(())
    }
}

fn mat_mul_float(a: &FloatMatrix, b: &FloatMatrix) -> FloatMatrix {
    FloatMatrix { inner: &a.inner * &b.inner }
}

/// Orthonormal factor of a 4x4 matrix; falls back to the identity when the
/// input is numerically rank deficient.
fn qr_orthonormal(m: &FloatMatrix) -> FloatMatrix {
    let qr = m.inner.clone().qr();
    let q = qr.q();
    if q.iter().all(|x| x.is_finite()) {
        let det_ok = q.determinant().abs() > 0.5;
        if det_ok {
            return FloatMatrix { inner: q };
        }
    }
    FloatMatrix::identity(4)
}
