//! Leading-order-term construction for the rescaled fluid system.
//!
//! Starting from asymptotic data `v_*` prescribed at the singularity,
//! the doubly-rescaled state `W` is built as a finite Picard ladder
//!
//! ```text
//! W_0 = v_*,   W_{m+1}(t) = v_* - int_t^0 Fhat(s, W_m(s)) ds,
//! Fhat = -Bhat^i d_i W + Ghat,
//! ```
//!
//! tabulated on a geometric time grid that accumulates at `t = 0`.  The
//! tail of each integral is singular but integrable; it is handled by a
//! power substitution under adaptive Gauss-Kronrod quadrature, while the
//! body of the march uses fixed Kronrod panels in log time.

use thiserror::Error;

pub mod iterate;
pub mod quadrature;
pub mod timegrid;

pub use iterate::{build_lot, LotExpansion, LotOptions, ResidualRate};
pub use quadrature::{adaptive_integral, gk15_panel, singular_tail};
pub use timegrid::TimeGrid;

use euler_coefficients::CoefficientError;

#[derive(Debug, Error)]
pub enum LotError {
    #[error("time bounds must satisfy t_start < t_deep < 0, got {0} and {1}")]
    BadTimeBounds(f64, f64),
    #[error("grid ratio must lie in (0, 1), got {0}")]
    BadRatio(f64),
    #[error("needs a ladder of at least {need} members, got {got}")]
    OrderTooSmall { got: usize, need: usize },
    #[error("power floor must lie in (0, 1], got {0}")]
    BadPowerFloor(f64),
    #[error("transport integrand is non-integrable: fitted endpoint exponent {exponent:.3} <= -1")]
    NonIntegrableSource { exponent: f64 },
    #[error("time grid spans {decades:.2} decades, rate fits need at least 1")]
    InsufficientDecades { decades: f64 },
    #[error("quadrature did not reach the tolerance after {0} bisections")]
    QuadratureStalled(usize),
    #[error("time {t} outside the tabulated range [{lo}, {hi}]")]
    TimeOutsideRange { t: f64, lo: f64, hi: f64 },
    #[error("member index {0} out of range for order {1}")]
    BadMember(usize, usize),
    #[error(transparent)]
    Coefficient(#[from] CoefficientError),
    #[error(transparent)]
    Fit(#[from] grid_solver::SolverError),
}
