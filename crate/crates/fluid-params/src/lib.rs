//! Parameter bookkeeping for a relativistic fluid on an anisotropic
//! cosmological background.
//!
//! The fluid obeys a linear equation of state `P = cs2 * rho` with
//! `cs2 = gamma - 1` for an adiabatic index `gamma` strictly between 1
//! (dust) and 2 (stiff).  Near the singularity each frame component of the
//! fluid vector settles down at its own power of `|t|`; the three exponents
//! `[rates[0], rates[1], rates[2]]` computed here control every rescaling,
//! decay estimate and solver schedule in the crates above this one.
//!
//! The crate has three jobs:
//! * compute the decay rates and classify a `(background, gamma)` pair as
//!   stable, borderline or unstable ([`gammas`], [`stability_classify`]),
//! * derive the solver exponents (integrability margin `q`, expansion order
//!   floor, shifted weights `lambda`, `mu`, fit exponent `epsilon`) used by
//!   the singular initial value solver ([`derived_exponents`]),
//! * evaluate the diagonal time rescalings that absorb the leading
//!   singular behaviour ([`rescaling_t`], [`rescaling_t_hat`]).

mod exponents;
mod rates;
mod rescaling;

pub use exponents::{derived_exponents, DerivedExponents};
pub use rates::{gammas, stability_classify, FluidParameters, StabilityClass};
pub use rescaling::{rescaling_t, rescaling_t_hat, Rescaling};

use thiserror::Error;

/// Errors from parameter construction and exponent derivation.
#[derive(Debug, Error)]
pub enum ParamError {
    /// Adiabatic index outside the open interval (1, 2).
    #[error("adiabatic index gamma = {0} must lie strictly between 1 and 2")]
    GammaOutOfRange(f64),
    /// The derived-exponent recipe needs all three rates positive.
    #[error("rates {0:?} not all positive; the expansion schedule is only defined in the stable regime")]
    NotStable([f64; 3]),
    /// Expansion order too small for the requested rates.
    #[error("expansion order {ell} too small: need ell > {min_ell:.4} for rates {rates:?}")]
    EllTooSmall { ell: usize, min_ell: f64, rates: [f64; 3] },
    /// Rescalings are only evaluated before the singularity.
    #[error("time {0} must be negative")]
    TimeNotNegative(f64),
}
