//! Models of the planar circular restricted three-body problem: the synodic
//! vector field with its dissipative unfolding, the two Levi-Civita
//! regularized fields, all first integrals, the chart transforms between
//! coordinate systems, collision circles, and the discrete symmetries.
//!
//! Everything is generic over [`cap_ivp::Scalar`], so each formula exists
//! exactly once and serves both floating-point search and interval
//! certification.

mod charts;
mod energy;
mod fields;
mod l4;
mod params;
mod phase;
mod symmetry;

pub use charts::{chart_inverse, chart_map, collision_circle, collision_circle_deriv, Branch};
pub use energy::{energy, omega, EnergyKind};
pub use fields::{field, lc1_field, lc2_field, synodic_field};
pub use l4::{l4_point, l5_point, libration_point, synodic_jacobian, Libration};
pub use params::SystemParams;
pub use phase::{Chart, PhasePoint};
pub use symmetry::{
    sym_boundary, sym_boundary_deriv, symmetry, SymKind, SymmetricBoundary,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CrtbpError {
    #[error("state at or enclosing a primary singularity")]
    Singularity,
    #[error("position part is at the regularized collision point")]
    CollisionPoint,
    #[error("radicand of a symmetric boundary chart is negative: {0}")]
    BoundaryDomain(f64),
    #[error("chart mismatch: expected {expected:?}, got {got:?}")]
    ChartMismatch { expected: Chart, got: Chart },
    #[error("mass ratio {0} outside (0, 1/2]")]
    MassRatio(f64),
    #[error(transparent)]
    Ivp(#[from] cap_ivp::IvpError),
}
