//! Validated-numerics substrate: intervals with exact directed rounding,
//! interval vectors/matrices under the max-norm, float linear algebra with
//! approximate and verified inverses, and dual-number jets.
//!
//! Directed rounding is realized globally by error-free transformations
//! (see [`round`]); results are bit-reproducible run to run and across
//! threads.

mod dual;
mod interval;
mod linalg;
pub mod round;
mod scalar;

pub use dual::Dual;
pub use interval::Interval;
pub use linalg::{verified_inverse, FloatMatrix, IMatrix, IVector};
pub use scalar::Scalar;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IvpError {
    #[error("NaN endpoint in interval construction")]
    NanEndpoint,
    #[error("reversed endpoints: lo={lo} > hi={hi}")]
    ReversedEndpoints { lo: f64, hi: f64 },
    #[error("division by an interval containing zero")]
    DivisionByZeroInterval,
    #[error("sqrt of interval [{lo}, {hi}] reaching below zero")]
    SqrtDomain { lo: f64, hi: f64 },
    #[error("matrix is singular to working precision")]
    SingularToWorkingPrecision,
    #[error("matrix not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("residual norm {residual_norm} >= 1; cannot bound inverse")]
    InverseBoundFailure { residual_norm: f64 },
}
