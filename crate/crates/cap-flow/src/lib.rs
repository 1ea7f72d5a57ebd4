//! Taylor-method initial value solver for the CRTBP model fields, in two
//! modes: fast floating point with dense output, and rigorous interval
//! (Lohner-type) enclosures with first-order spatial and parametric
//! variational equations, plus validated recovery of synodic time from
//! regularized trajectories.

pub mod fields_tape;
pub mod numeric;
pub mod tape;
pub mod time_recovery;
pub mod validated;

use cap_crtbp::{Chart, PhasePoint, SystemParams};
use cap_ivp::Interval;
use thiserror::Error;

pub use numeric::{DenseStep, NumericFlow, NumericFlowResult};
pub use validated::{Box4, ValidatedFlow, ValidatedFlowResult, ValidatedStepPoly};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FlowError {
    #[error("enclosure approaches an excluded set of the field")]
    SingularityApproach,
    #[error("a-priori enclosure did not stabilize (step too long or blow-up)")]
    BlowUp,
    #[error("trajectory left the chart domain")]
    DomainExit,
    #[error("dense trace does not cover the requested time")]
    TraceGap,
}

/// Which of the model fields to integrate, with its scalar parameter
/// (unfolding strength alpha for the synodic field; the regularized fields
/// take their energy from the system parameters).
#[derive(Clone, Copy, Debug)]
pub enum FieldSpec {
    Synodic { alpha: Interval },
    Lc1,
    Lc2,
}

impl FieldSpec {
    pub fn chart(&self) -> Chart {
        match self {
            FieldSpec::Synodic { .. } => Chart::Synodic,
            FieldSpec::Lc1 => Chart::Lc1,
            FieldSpec::Lc2 => Chart::Lc2,
        }
    }

    /// Interval parameter vector for the tape: [mu, own].
    pub fn params_interval(&self, params: &SystemParams) -> Vec<Interval> {
        match self {
            FieldSpec::Synodic { alpha } => vec![params.mu_interval(), *alpha],
            FieldSpec::Lc1 | FieldSpec::Lc2 => {
                vec![params.mu_interval(), params.c_interval()]
            }
        }
    }

    pub fn params_f64(&self, params: &SystemParams) -> Vec<f64> {
        match self {
            FieldSpec::Synodic { alpha } => vec![params.mu_f64(), alpha.mid()],
            FieldSpec::Lc1 | FieldSpec::Lc2 => vec![params.mu_f64(), params.c_f64()],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Numeric,
    Validated,
}

/// A complete flow request, as consumed by the shooting layer and the CLI.
#[derive(Clone, Debug)]
pub struct FlowRequest {
    pub field: FieldSpec,
    pub params: SystemParams,
    pub x0: Box4,
    /// Synodic time for the synodic field, rescaled time for LC fields.
    pub t: Interval,
    pub order: usize,
    pub steps: usize,
    pub mode: Mode,
}

/// Result of [`flow`]: endpoint enclosure (degenerate in numeric mode),
/// derivative enclosures, and the per-step dense output.
#[derive(Clone, Debug)]
pub struct FlowResult {
    pub x: PhasePoint<Interval>,
    pub dx: [[Interval; 4]; 4],
    pub dparam: Box4,
    pub validated_steps: Vec<ValidatedStepPoly>,
    pub numeric_steps: Vec<DenseStep>,
}

/// Flow the request.  Numeric mode integrates the interval midpoints.
pub fn flow(req: &FlowRequest) -> Result<FlowResult, FlowError> {
    let tape = fields_tape::tape_for_chart(req.field.chart());
    match req.mode {
        Mode::Validated => {
            let vf = ValidatedFlow {
                tape: &tape,
                params: req.field.params_interval(&req.params),
                order: req.order,
            };
            let out = vf.flow_box(&req.x0, req.t, req.steps, true)?;
            Ok(FlowResult {
                x: PhasePoint { coords: out.x, chart: req.field.chart() },
                dx: out.jac.unwrap(),
                dparam: out.jparam.unwrap(),
                validated_steps: out.steps,
                numeric_steps: vec![],
            })
        }
        Mode::Numeric => {
            let nf = NumericFlow {
                tape: &tape,
                params: req.field.params_f64(&req.params),
                order: req.order,
            };
            let x0 = req.x0.map(|i| i.mid());
            let out = nf.flow(x0, req.t.mid(), req.steps, true)?;
            let coords: Box4 = std::array::from_fn(|i| Interval::point(out.x[i]));
            let mut dx = [[Interval::ZERO; 4]; 4];
            let mut dparam = [Interval::ZERO; 4];
            for i in 0..4 {
                for j in 0..4 {
                    dx[i][j] = Interval::point(out.dx[i][j]);
                }
                dparam[i] = Interval::point(out.dparam[i]);
            }
            Ok(FlowResult {
                x: PhasePoint { coords, chart: req.field.chart() },
                dx,
                dparam,
                validated_steps: vec![],
                numeric_steps: out.steps,
            })
        }
    }
}
