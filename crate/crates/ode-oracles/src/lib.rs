//! Closed-form and high-accuracy ODE references for the singular fluid
//! solver: the scalar model equation `d_t u = (b/t) u + F` with its
//! explicit solution, the tilt-ratio equation obeyed by spatially
//! homogeneous fluids with one tilt axis, and the full spatially
//! homogeneous reduction of the rescaled Euler system.
//!
//! Everything here is deliberately independent of the PDE stack: the
//! model solution is quadrature against a closed form, the ratio
//! equation carries an exact first integral that is monitored along the
//! trajectory, and the homogeneous integrator is a plain adaptive RK4 on
//! four coupled scalars.  The PDE solver is tested against these
//! references, so they run at tolerances at least an order of magnitude
//! tighter than anything they are compared to.

use thiserror::Error;

pub mod homogeneous;
pub mod model;
pub mod qeq;

pub use homogeneous::{
    frame_components, frame_ratio, homogeneous_euler, tilt_for_frame_ratio, HomOptions, HomStop,
    HomTrajectory,
};
pub use model::{model_exact, rk4_model, Anchor, ModelRun, ModelSolution};
pub use qeq::{
    q_equation, ratio_limit, tau_of_solver_time, QOptions, QSign, QStop, QTrajectory,
};

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("sound speed squared must lie in (0, 1), got {0}")]
    BadSoundSpeed(f64),
    #[error("initial ratio must be positive, got {0}")]
    BadInitialRatio(f64),
    #[error("ratio-equation times must be positive and distinct, got [{0}, {1}]")]
    BadTauRange(f64, f64),
    #[error("time range must satisfy t_start < t_end < 0, got [{0}, {1}]")]
    BadTimeRange(f64, f64),
    #[error("model evaluation time must be positive, got {0}")]
    BadModelTime(f64),
    #[error("anchor time must be positive, got {0}")]
    BadAnchorTime(f64),
    #[error(
        "asymptotic anchor needs an integrable source: sampled exponent {got:.3} \
         must exceed {need:.3}"
    )]
    SourceNotIntegrable { got: f64, need: f64 },
    #[error("source samples do not follow a power law near zero ({0})")]
    SourceIrregular(&'static str),
    #[error("the two exponent gaps coincide; the ratio equation degenerates")]
    DegenerateGap,
    #[error(transparent)]
    Quadrature(#[from] lot_builder::LotError),
    #[error(transparent)]
    Geometry(#[from] kasner_geometry::GeometryError),
    #[error(transparent)]
    Coefficient(#[from] euler_coefficients::CoefficientError),
    #[error(transparent)]
    Fit(#[from] grid_solver::SolverError),
}
