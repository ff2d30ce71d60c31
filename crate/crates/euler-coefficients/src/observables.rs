use fluid_params::FluidParameters;

use crate::assembly::minkowski_inner;
use crate::State;

/// Invariant norm `V.V` of the physical fluid vector, computed from the
/// rescaled state without forming `V`: the rescaled metric factors through
/// Minkowski, so `V.V = (-t)^(2 Lambda) * eta(u, u)` with
/// `Lambda = cs2 (k^2 + 3) / 4`.
pub fn vv_from_scaled(t: f64, u: &State, params: &FluidParameters) -> f64 {
    let lambda = params.cs2 * (params.bg.k * params.bg.k + 3.0) / 4.0;
    (-t).powf(2.0 * lambda) * minkowski_inner(u)
}

/// Fluid pressure from the invariant norm:
/// `P = rho0 cs2 (-V.V)^(-(cs2 + 1)/(2 cs2))`.
///
/// `rho0` fixes the amplitude scale.  Returns NaN if the vector is not
/// timelike (`vv >= 0`), which downstream monitors treat as breakdown.
pub fn pressure(vv: f64, cs2: f64, rho0: f64) -> f64 {
    rho0 * cs2 * (-vv).powf(-(cs2 + 1.0) / (2.0 * cs2))
}

/// Energy density, `rho = P / cs2`.
pub fn density(vv: f64, cs2: f64, rho0: f64) -> f64 {
    pressure(vv, cs2, rho0) / cs2
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn comoving_power_law_pressure() {
        // V = s^{cs2} e0 in flat space gives P = rho0 cs2 s^{-(1+cs2)}.
        let cs2 = 0.8;
        for s in [0.3f64, 1.0, 2.5] {
            let vv = -(s.powf(cs2)).powi(2);
            assert_relative_eq!(
                pressure(vv, cs2, 1.0),
                cs2 * s.powf(-(1.0 + cs2)),
                max_relative = 1e-13
            );
            assert_relative_eq!(density(vv, cs2, 1.0), s.powf(-(1.0 + cs2)), max_relative = 1e-13);
        }
    }

    #[test]
    fn spacelike_vector_yields_nan() {
        assert!(pressure(0.2, 0.8, 1.0).is_nan());
    }
}
