//! Expression tapes: each vector field is described once as a small DAG of
//! arithmetic nodes, and Taylor coefficients of the flow are generated by
//! recursive automatic differentiation over the tape.  The same tape serves
//! plain floats, intervals and dual numbers, because every rule is written
//! over [`Scalar`].

use cap_ivp::Scalar;
use cap_ivp::IvpError;

/// One node of the field DAG.  Indices refer to earlier nodes.
#[derive(Clone, Copy, Debug)]
pub enum Op {
    /// State component (0..dim); coefficients are supplied by the driver.
    Var(usize),
    Const(f64),
    /// Runtime parameter by slot (mass ratio, energy, unfolding strength).
    Param(usize),
    Add(usize, usize),
    Sub(usize, usize),
    Neg(usize),
    Mul(usize, usize),
    MulConst(usize, f64),
    /// a + c * b
    MulAdd(usize, f64, usize),
    Div(usize, usize),
    Sqrt(usize),
    /// a^{-3/2}, the gravitational kernel.
    PowNeg3Half(usize),
}

/// A complete field description: DAG, output nodes (the d state
/// derivatives), and which parameter slot the jet differentiates.
#[derive(Clone, Debug)]
pub struct Tape {
    pub ops: Vec<Op>,
    pub outputs: [usize; 4],
    pub n_params: usize,
    /// Parameter whose derivative is carried in the last dual slot
    /// (unfolding alpha for the synodic field, energy c for regularized).
    pub diff_param: Option<usize>,
    /// Node index of each state variable.
    pub var_nodes: [usize; 4],
}

/// Builder used by the field constructors.
#[derive(Default)]
pub struct TapeBuilder {
    ops: Vec<Op>,
}

impl TapeBuilder {
    pub fn push(&mut self, op: Op) -> usize {
        self.ops.push(op);
        self.ops.len() - 1
    }

    pub fn var(&mut self, i: usize) -> usize {
        self.push(Op::Var(i))
    }

    pub fn konst(&mut self, c: f64) -> usize {
        self.push(Op::Const(c))
    }

    pub fn param(&mut self, i: usize) -> usize {
        self.push(Op::Param(i))
    }

    pub fn add(&mut self, a: usize, b: usize) -> usize {
        self.push(Op::Add(a, b))
    }

    pub fn sub(&mut self, a: usize, b: usize) -> usize {
        self.push(Op::Sub(a, b))
    }

    pub fn neg(&mut self, a: usize) -> usize {
        self.push(Op::Neg(a))
    }

    pub fn mul(&mut self, a: usize, b: usize) -> usize {
        self.push(Op::Mul(a, b))
    }

    pub fn mul_const(&mut self, a: usize, c: f64) -> usize {
        self.push(Op::MulConst(a, c))
    }

    pub fn mul_add(&mut self, a: usize, c: f64, b: usize) -> usize {
        self.push(Op::MulAdd(a, c, b))
    }

    pub fn div(&mut self, a: usize, b: usize) -> usize {
        self.push(Op::Div(a, b))
    }

    pub fn pow_neg_3_half(&mut self, a: usize) -> usize {
        self.push(Op::PowNeg3Half(a))
    }

    pub fn finish(self, outputs: [usize; 4], n_params: usize, diff_param: Option<usize>) -> Tape {
        let mut var_nodes = [usize::MAX; 4];
        for (idx, op) in self.ops.iter().enumerate() {
            if let Op::Var(i) = op {
                var_nodes[*i] = idx;
            }
        }
        assert!(var_nodes.iter().all(|&v| v != usize::MAX), "tape must use all 4 state variables");
        Tape { ops: self.ops, outputs, n_params, diff_param, var_nodes }
    }
}

/// Per-run storage: Taylor coefficients of every node.
pub struct TapeExec<S> {
    coeffs: Vec<Vec<S>>,
    params: Vec<S>,
    order: usize,
}

impl<S: Scalar> TapeExec<S> {
    pub fn new(tape: &Tape, params: Vec<S>, order: usize) -> Self {
        assert_eq!(params.len(), tape.n_params);
        TapeExec {
            coeffs: vec![Vec::with_capacity(order + 2); tape.ops.len()],
            params,
            order,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Set the order-k Taylor coefficient of state variable `i`.
    pub fn set_var(&mut self, tape: &Tape, i: usize, k: usize, value: S) {
        let idx = tape.var_nodes[i];
        debug_assert_eq!(self.coeffs[idx].len(), k);
        self.coeffs[idx].push(value);
    }

    /// Order-k coefficient of output row `r` (requires `advance(k)` done).
    pub fn output(&self, tape: &Tape, r: usize, k: usize) -> S {
        self.coeffs[tape.outputs[r]][k]
    }

    /// Compute order-`k` coefficients of every non-variable node.
    pub fn advance(&mut self, tape: &Tape, k: usize) -> Result<(), IvpError> {
        for idx in 0..tape.ops.len() {
            let val = match tape.ops[idx] {
                Op::Var(_) => continue, // provided externally
                Op::Const(c) => {
                    if k == 0 {
                        S::from_f64(c)
                    } else {
                        S::zero()
                    }
                }
                Op::Param(i) => {
                    if k == 0 {
                        self.params[i]
                    } else {
                        S::zero()
                    }
                }
                Op::Add(a, b) => self.coeffs[a][k] + self.coeffs[b][k],
                Op::Sub(a, b) => self.coeffs[a][k] - self.coeffs[b][k],
                Op::Neg(a) => -self.coeffs[a][k],
                Op::MulConst(a, c) => self.coeffs[a][k] * S::from_f64(c),
                Op::MulAdd(a, c, b) => self.coeffs[a][k] + S::from_f64(c) * self.coeffs[b][k],
                Op::Mul(a, b) => {
                    let (ca, cb) = (&self.coeffs[a], &self.coeffs[b]);
                    let mut acc = ca[0] * cb[k];
                    for j in 1..=k {
                        acc = acc + ca[j] * cb[k - j];
                    }
                    acc
                }
                Op::Div(a, b) => {
                    let b0 = self.coeffs[b][0];
                    if k == 0 {
                        self.coeffs[a][0].div_checked(b0)?
                    } else {
                        let mut acc = self.coeffs[a][k];
                        for j in 0..k {
                            acc = acc - self.coeffs[idx][j] * self.coeffs[b][k - j];
                        }
                        acc.div_checked(b0)?
                    }
                }
                Op::Sqrt(a) => {
                    if k == 0 {
                        self.coeffs[a][0].sqrt_checked()?
                    } else {
                        let c = &self.coeffs[idx];
                        let mut acc = self.coeffs[a][k];
                        for j in 1..k {
                            acc = acc - c[j] * c[k - j];
                        }
                        acc.div_checked(S::from_f64(2.0) * c[0])?
                    }
                }
                Op::PowNeg3Half(a) => {
                    let a0 = self.coeffs[a][0];
                    if k == 0 {
                        // a^{-3/2} = 1 / (a sqrt(a))
                        let root = a0.sqrt_checked()?;
                        S::one().div_checked(a0 * root)?
                    } else {
                        // a t' = alpha t a' with alpha = -3/2:
                        // k a0 t_k = sum_{j<k} (alpha (k-j) - j) a_{k-j} t_j
                        let alpha = -1.5;
                        let mut acc = S::zero();
                        for j in 0..k {
                            let factor = alpha * ((k - j) as f64) - j as f64;
                            acc = acc
                                + S::from_f64(factor) * self.coeffs[a][k - j] * self.coeffs[idx][j];
                        }
                        acc.div_checked(S::from_f64(k as f64) * a0)?
                    }
                }
            };
            debug_assert_eq!(self.coeffs[idx].len(), k);
            self.coeffs[idx].push(val);
        }
        Ok(())
    }
}

/// Convenience: evaluate the tape as a plain function (order 0 only).
pub fn eval_field<S: Scalar>(tape: &Tape, x: &[S; 4], params: Vec<S>) -> Result<[S; 4], IvpError> {
    let mut exec = TapeExec::new(tape, params, 0);
    for (i, xi) in x.iter().enumerate() {
        exec.set_var(tape, i, 0, *xi);
    }
    exec.advance(tape, 0)?;
    Ok([
        exec.output(tape, 0, 0),
        exec.output(tape, 1, 0),
        exec.output(tape, 2, 0),
        exec.output(tape, 3, 0),
    ])
}
