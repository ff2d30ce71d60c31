//! System-agnostic layer for quasilinear symmetric hyperbolic equations
//! with a Fuchsian singularity at `t = 0`:
//!
//! ```text
//! B0(t, x, v) d_t v + B^i(t, x, v) d_i v = (1/t) Bc(t, x, v) v + F(t, x, v)
//! ```
//!
//! on `t < 0`.  A concrete model implements [`FuchsianSystem`]; the grid
//! solver evolves any implementor, and the condition checkers decide
//! whether the singular existence and uniqueness machinery applies to a
//! given coefficient family:
//!
//! * [`CanonicalTransformed`] compresses time by `t = -(-tau)^(1/p)` and
//!   shifts the amplitude by `(-tau)^(lam/p)`, mapping a Fuchsian system
//!   to another one with shifted zeroth-order spectrum.  This reduces any
//!   admissible `(p, lam)` pair to the normalized case.
//! * [`check_forward_conditions`] evaluates the energy-estimate
//!   inequalities that guarantee existence of solutions with prescribed
//!   data at the singularity.
//! * [`check_backward_kappa`] evaluates the sharper coefficient sandwich
//!   used for uniqueness of the singular initial value problem.
//! * [`divergence_map`] measures the spacetime divergence of the symbol
//!   family along a solution patch, the quantity controlled by the
//!   symmetric-hyperbolic energy identity.

mod canonical;
mod conditions;
mod divergence;
mod eigen;

pub use canonical::CanonicalTransformed;
pub use conditions::{
    check_backward_kappa, check_forward_conditions, BackwardConstants, ConditionCheck,
    ConditionReport, ForwardInputs,
};
pub use divergence::divergence_map;
pub use eigen::{cholesky, generalized_eigen_range, symmetric_eigenvalues};

use serde::{Deserialize, Serialize};

/// A quasilinear symmetric hyperbolic system with a `1/t` zeroth-order
/// singularity, sampled pointwise on a spatial grid.
///
/// `R` is the fiber dimension.  Methods receive the time, the flattened
/// grid index of the point (for coefficient families with explicit
/// spatial dependence), and the state at that point.
pub trait FuchsianSystem<const R: usize> {
    /// Number of spatial derivative directions the system actually uses
    /// (1 to 3).
    fn spatial_dims(&self) -> usize;

    /// Called once per time level before pointwise evaluation; concrete
    /// systems cache time-dependent background fields here.
    fn prepare(&mut self, _t: f64) {}

    /// Time symbol; must be symmetric positive definite on valid states.
    fn b0(&self, t: f64, idx: usize, v: &[f64; R]) -> [[f64; R]; R];

    /// Advection symbol in spatial direction `axis` (0-based); symmetric.
    fn b_adv(&self, axis: usize, t: f64, idx: usize, v: &[f64; R]) -> [[f64; R]; R];

    /// Zeroth-order matrix, entering the right-hand side as `(1/t) Bc v`.
    fn bc(&self, t: f64, idx: usize, v: &[f64; R]) -> [[f64; R]; R];

    /// Remaining source term `F(t, x, v)`.
    fn source(&self, t: f64, idx: usize, v: &[f64; R]) -> [f64; R];

    /// Whether a state is inside the regime the coefficients are valid
    /// for; solvers poll this to detect breakdown.
    fn state_ok(&self, _v: &[f64; R]) -> bool {
        true
    }
}

/// Structural parameters of a Fuchsian model problem, as consumed by the
/// condition checkers and recorded in reports.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SystemParams {
    /// Time-compression exponent of the canonical form.
    pub p: f64,
    /// Weight of the singular energy norm.
    pub mu: f64,
    /// Weight of the frozen source, `F0 ~ (-t)^lambda`.
    pub lambda: f64,
    /// Contraction gain per expansion order.
    pub q: f64,
    /// Lower coefficient sandwich constant (`B0 >= 1/gamma1`).
    pub gamma1: f64,
    /// Upper coefficient sandwich constant (`B0 <= gamma2 I`).
    pub gamma2: f64,
    /// Radius of the state window the constants were measured over.
    pub big_r: f64,
}
