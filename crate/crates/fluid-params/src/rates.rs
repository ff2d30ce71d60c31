use kasner_geometry::KasnerBackground;
use serde::{Deserialize, Serialize};

use crate::ParamError;

/// Decay rates `[G1, G2, G3]` of the frame fluid components toward the
/// singularity, in the component order (time, x, y, z collapsed to x/y/z).
///
/// With `s = k^2 + 3` and `l` the signed anisotropy root of the background:
///
/// ```text
/// G1 = (3 gamma - 2     - k^2 (2 - gamma)) / 4
/// G2 = (3 gamma - 5 + 2l + k^2 (gamma - 1)) / 4
/// G3 = (3 gamma - 5 - 2l + k^2 (gamma - 1)) / 4
/// ```
///
/// Equivalently `Gi = (cs2 - p_i) * s / 4` with `p_i` the metric exponents,
/// which is the form the property tests check against.
pub fn gammas(bg: &KasnerBackground, gamma: f64) -> [f64; 3] {
    let k2 = bg.k * bg.k;
    let l = bg.l;
    [
        (3.0 * gamma - 2.0 - k2 * (2.0 - gamma)) / 4.0,
        (3.0 * gamma - 5.0 + 2.0 * l + k2 * (gamma - 1.0)) / 4.0,
        (3.0 * gamma - 5.0 - 2.0 * l + k2 * (gamma - 1.0)) / 4.0,
    ]
}

/// Sign of the slowest rate decides the fate of the fluid near t = 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StabilityClass {
    /// All rates positive: velocity tilt decays, asymptotic data exists.
    Stable,
    /// Slowest rate vanishes (sound speed equals the largest metric
    /// exponent): the tilt freezes instead of decaying.
    Borderline,
    /// Slowest rate negative: the tilt grows and the fluid steepens
    /// toward a null configuration.
    Unstable,
}

/// Classify a sound speed against a background.
///
/// Stability holds exactly when `cs2` exceeds the largest metric exponent;
/// the borderline case is equality within `tol`.
pub fn stability_classify(cs2: f64, bg: &KasnerBackground) -> StabilityClass {
    let tol = 1e-12;
    let gap = cs2 - bg.max_exponent();
    if gap > tol {
        StabilityClass::Stable
    } else if gap < -tol {
        StabilityClass::Unstable
    } else {
        StabilityClass::Borderline
    }
}

/// A background plus an equation of state, with the decay rates cached.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FluidParameters {
    pub bg: KasnerBackground,
    /// Adiabatic index, in (1, 2).
    pub gamma: f64,
    /// Squared sound speed, `gamma - 1`.
    pub cs2: f64,
    /// Decay rates `[G1, G2, G3]`; ordered decreasing in the stable window.
    pub rates: [f64; 3],
}

impl FluidParameters {
    /// Pair a background with an adiabatic index.  Unstable pairs are
    /// allowed (the blowup experiments need them); only `gamma` itself is
    /// validated here.
    pub fn new(bg: KasnerBackground, gamma: f64) -> Result<Self, ParamError> {
        if !(gamma > 1.0 && gamma < 2.0) {
            return Err(ParamError::GammaOutOfRange(gamma));
        }
        let rates = gammas(&bg, gamma);
        Ok(Self { bg, gamma, cs2: gamma - 1.0, rates })
    }

    pub fn classify(&self) -> StabilityClass {
        stability_classify(self.cs2, &self.bg)
    }

    /// Smallest adiabatic index (exclusive) for which this background is
    /// stable: `gamma > 1 + max_i p_i`.
    pub fn gamma_threshold(bg: &KasnerBackground) -> f64 {
        1.0 + bg.max_exponent()
    }

    /// Rate exponents per fluid component: `[G1, G1, G2, G3]`.
    pub fn component_rates(&self) -> [f64; 4] {
        let [g1, g2, g3] = self.rates;
        [g1, g1, g2, g3]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn frozen_rates_at_the_reference_point() {
        let bg = KasnerBackground::vacuum(0.0).unwrap();
        let g = gammas(&bg, 1.8);
        assert_relative_eq!(g[0], 0.85, max_relative = 1e-14);
        assert_relative_eq!(g[1], 0.10, epsilon = 1e-14);
        assert_relative_eq!(g[2], 0.10, epsilon = 1e-14);
    }

    #[test]
    fn near_threshold_case_has_a_negative_slow_rate() {
        // gamma = 1.9 at k = 0.5 sits just below the stability threshold
        // (k^2 + 2k + 5)/(k^2 + 3) + 1 - 1 = 6.25/3.25 ~ 1.9231.
        let bg = KasnerBackground::vacuum(0.5).unwrap();
        let g = gammas(&bg, 1.9);
        assert_relative_eq!(g[0], 0.91875, max_relative = 1e-13);
        assert_relative_eq!(g[1], 0.48125, max_relative = 1e-13);
        assert_relative_eq!(g[2], -0.01875, max_relative = 1e-12);
        assert_eq!(stability_classify(0.9, &bg), StabilityClass::Unstable);
    }

    #[test]
    fn vacuum_gamma_window_at_the_symmetric_point() {
        // k = 0: stable exactly for gamma > 5/3.
        let bg = KasnerBackground::vacuum(0.0).unwrap();
        assert_relative_eq!(FluidParameters::gamma_threshold(&bg), 5.0 / 3.0, max_relative = 1e-14);
        assert_eq!(stability_classify(2.0 / 3.0 + 1e-6, &bg), StabilityClass::Stable);
        assert_eq!(stability_classify(2.0 / 3.0 - 1e-6, &bg), StabilityClass::Unstable);
        assert_eq!(stability_classify(2.0 / 3.0, &bg), StabilityClass::Borderline);
    }

    #[test]
    fn rejects_dust_and_stiff_endpoints() {
        let bg = KasnerBackground::vacuum(0.0).unwrap();
        assert!(FluidParameters::new(bg.clone(), 1.0).is_err());
        assert!(FluidParameters::new(bg, 2.0).is_err());
    }
}
