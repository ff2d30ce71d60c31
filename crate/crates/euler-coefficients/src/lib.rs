//! Coefficient assembly for the rescaled relativistic Euler equations near
//! a Kasner-type singularity.
//!
//! The fluid equations are quasilinear and symmetric hyperbolic,
//! `A^d(V) d_d V + lower order = 0`, with `A^d` homogeneous of degree one
//! in the fluid vector `V`.  After the diagonal rescaling `V = T(t) U` and
//! multiplication by a scalar normalizer, the system takes the Fuchsian
//! form
//!
//! ```text
//! B0(U) d_t U + B^i(U) d_i U = (1/t) Bc(U) U + G(t, U)
//! ```
//!
//! in which `B0` and `B^x` are exactly t-independent and `B^y`, `B^z`
//! carry pure power-law prefactors.  The production path
//! ([`assemble_full`]) exploits a factorization of the rescaled metric
//! through the Minkowski metric, so every matrix entry is a polynomial in
//! the components of `U`: no singular powers, no divisions, no
//! cancellations.  The literal route ([`literal_principal`],
//! [`literal_zeroth`]) builds the same objects from the covariant symbol,
//! the Christoffel symbols and the explicit rescaling sandwich; the two
//! routes are compared in the integration tests and never share code.
//!
//! On top of the coefficient set the crate provides the remainder source
//! for the singular initial value formulation ([`remainder_source`]), the
//! transported coefficients used by the leading-order expansion
//! ([`lot_coefficients`]), and the scalar observables (pressure, energy
//! density).

mod assembly;
mod linalg;
mod literal;
mod observables;
mod remainder;

pub use assembly::{
    assemble_full, bc_matrix, check_state, minkowski_inner, r_scalar, source_g, symbol_b,
    CoefficientSet,
};
pub use linalg::{mat_mul4, mat_vec4, solve4, sym_defect};
pub use literal::{covariant_symbol, literal_principal, literal_zeroth, multiplier};
pub use observables::{density, pressure, vv_from_scaled};
pub use remainder::{lot_coefficients, remainder_source, remainder_source_split, LotCoefficients};

use thiserror::Error;

/// 4x4 real matrix in row-major fixed storage.
pub type Mat4 = [[f64; 4]; 4];

/// State vector of the rescaled fluid: frame components `(U^0, U^1, U^2, U^3)`.
pub type State = [f64; 4];

#[derive(Debug, Error)]
pub enum CoefficientError {
    /// The state has lost timelikeness: `(U^0)^2 <= |U^spatial|^2`.
    #[error("state not timelike: U0 = {u0}, spatial norm = {tilt}")]
    NotTimelike { u0: f64, tilt: f64 },
    /// The spatial tilt exceeds the hyperbolicity window.
    #[error("tilt ratio {ratio} exceeds window {window}")]
    OutsideWindow { ratio: f64, window: f64 },
    /// 4x4 solve hit a numerically singular matrix.
    #[error("singular matrix in coefficient solve (pivot {0:.3e})")]
    SingularMatrix(f64),
}
