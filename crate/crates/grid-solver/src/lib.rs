//! Method-of-lines solver for Fuchsian symmetric hyperbolic systems on
//! periodic boxes `[0, 2 pi)^d`, `d = 1..3`.
//!
//! Time marching uses the logarithmic variable `tau = -ln(-t)`, so the
//! approach to the singularity `t -> 0^-` becomes `tau -> +infinity` and
//! the `1/t` stiffness turns into an O(1) coefficient: the evolved system
//! is
//!
//! ```text
//! d_tau u = -inv(B0) [ Bc u + t F - t B^i d_i u ]
//! ```
//!
//! Spatial derivatives come from one of two deliberately independent
//! backends: a Fourier collocation route (exact for band-limited fields,
//! Nyquist mode dropped) and a fourth-order central difference route used
//! to cross-check it.  The integrator is classical RK4 with step doubling
//! for error control.
//!
//! The crate also provides the discrete Sobolev norms used by every decay
//! measurement ([`sobolev_norm`]), an energy-identity diagnostic tying
//! together symmetry, periodicity and the divergence of the coefficient
//! family ([`energy_identity_residual`]), and the log-log power-law
//! fitter used to extract decay rates from trajectories
//! ([`fit_power_law`]).

mod evolve;
mod fd;
mod fit;
mod grid;
mod linsolve;
mod spectral;

pub use evolve::{
    energy, energy_identity_residual, evolve, rk4_fixed_step, Backend, SolverOptions, StopReason,
    Trajectory,
};
pub use fd::fd4_derivative_component;
pub use fit::{fit_power_law, PowerLawFit};
pub use grid::{Field, Grid};
pub use linsolve::solve_small;
pub use spectral::{rectangle_integral, sobolev_norm, sobolev_norm_literal, SpectralOps};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("field lives on a different grid ({expected} points expected, {got} given)")]
    GridMismatch { expected: usize, got: usize },
    #[error("linear solve hit a singular matrix (pivot {0:.3e})")]
    SingularMatrix(f64),
    #[error("power-law fit needs at least {need} points, got {got}")]
    TooFewPoints { need: usize, got: usize },
    #[error("power-law fit needs a decade of spread in x, got ratio {0:.3}")]
    SpanTooSmall(f64),
    #[error("power-law fit needs positive finite data ({0})")]
    BadFitData(&'static str),
    #[error("step size underflow at tau = {0}")]
    StepUnderflow(f64),
}
