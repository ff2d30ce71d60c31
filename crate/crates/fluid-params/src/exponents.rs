use serde::{Deserialize, Serialize};

use crate::{FluidParameters, ParamError};

/// Exponent schedule for the singular initial value solver, all derived
/// from the decay rates and the expansion order `ell`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct DerivedExponents {
    /// Expansion order of the leading-order approximation.
    pub ell: usize,
    /// Gain per expansion step: `q = min(1 - G1, 2 G3)`.
    pub q: f64,
    /// Strict lower bound on admissible orders, `G1 / q`.
    pub min_ell: f64,
    /// Singular weight of the remainder source: `min(1, G1 + G3, ell q) - 1`.
    pub lambda: f64,
    /// Upper end of the admissible weight interval, `lambda + 1`.
    pub mu0: f64,
    /// Energy weight, the midpoint of `(G1, mu0)`.
    pub mu: f64,
    /// Guaranteed decay-fit exponent: `min(ell q - G1, 1 - G1, G3)`.
    pub epsilon: f64,
    /// Ceiling of `epsilon` over all orders: `min(1 - G1, G3)`.
    pub epsilon_max: f64,
    /// Perturbation-energy weight, placed at 90% of its admissible bound.
    pub p: f64,
    /// Time-compression exponent paired with `p`: `(lambda + 1 - p - mu) / p`.
    pub alpha: f64,
}

/// Derive the full exponent schedule at expansion order `ell`.
///
/// Fails unless all three rates are positive and `ell` exceeds `G1 / q`;
/// below that order the remainder source is not integrable at t = 0.
pub fn derived_exponents(params: &FluidParameters, ell: usize) -> Result<DerivedExponents, ParamError> {
    let [g1, _, g3] = params.rates;
    if params.rates.iter().any(|&g| g <= 0.0) || g1 >= 1.0 {
        return Err(ParamError::NotStable(params.rates));
    }
    let q = (1.0 - g1).min(2.0 * g3);
    let min_ell = g1 / q;
    if ell as f64 <= min_ell {
        return Err(ParamError::EllTooSmall { ell, min_ell, rates: params.rates });
    }
    let lq = ell as f64 * q;
    let lambda = 1.0_f64.min(g1 + g3).min(lq) - 1.0;
    let mu0 = lambda + 1.0;
    let mu = 0.5 * (g1 + mu0);
    let epsilon = (lq - g1).min(1.0 - g1).min(g3);
    let epsilon_max = (1.0 - g1).min(g3);
    let p = 0.9 * (1.0 - g1 + g3).min(mu).min(q).min(g3).min(mu0 - mu);
    let alpha = (mu0 - p - mu) / p;
    Ok(DerivedExponents {
        ell,
        q,
        min_ell,
        lambda,
        mu0,
        mu,
        epsilon,
        epsilon_max,
        p,
        alpha,
    })
}

impl DerivedExponents {
    /// Smallest admissible expansion order for these parameters.
    pub fn minimal_order(params: &FluidParameters) -> Result<usize, ParamError> {
        let [g1, _, g3] = params.rates;
        if params.rates.iter().any(|&g| g <= 0.0) || g1 >= 1.0 {
            return Err(ParamError::NotStable(params.rates));
        }
        let q = (1.0 - g1).min(2.0 * g3);
        let min_ell = g1 / q;
        let mut ell = min_ell.floor() as usize + 1;
        // The bound is strict; bump once more if min_ell landed on an integer.
        if (ell as f64) <= min_ell {
            ell += 1;
        }
        Ok(ell)
    }
}
