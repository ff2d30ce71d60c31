use fluid_params::{rescaling_t_hat, FluidParameters};

use crate::assembly::{assemble_full, source_g};
use crate::linalg::{mat_vec4, solve4};
use crate::{CoefficientError, Mat4, State};

/// Source term of the remainder formulation.  Writing the full state as
/// `U = ustar + u` with `ustar` the leading-order approximation, the
/// system for the remainder reads
///
/// ```text
/// B0(U) d_t u + B^i(U) d_i u = (1/t) Bc(U) u + F(t, x, u)
/// F = (1/t) Bc(U) ustar + G(t, U) - B0(U) d_t ustar - B^i(U) d_i ustar
/// ```
///
/// `dx_ustar` holds the spatial derivatives of `ustar` for the axes
/// actually present (1 to 3 of them, in x, y, z order).
pub fn remainder_source(
    t: f64,
    u: &State,
    ustar: &State,
    dt_ustar: &State,
    dx_ustar: &[State],
    params: &FluidParameters,
) -> State {
    debug_assert!(dx_ustar.len() <= 3);
    let total: State = core::array::from_fn(|i| ustar[i] + u[i]);
    let coeff = assemble_full(t, &total, params);
    let bc_ustar = mat_vec4(&coeff.bc, ustar);
    let b0_dt = mat_vec4(&coeff.b0, dt_ustar);
    let mut f = [0.0; 4];
    for r in 0..4 {
        f[r] = bc_ustar[r] / t + coeff.g[r] - b0_dt[r];
    }
    for (axis, dx) in dx_ustar.iter().enumerate() {
        let badv = mat_vec4(&coeff.b_adv[axis], dx);
        for r in 0..4 {
            f[r] -= badv[r];
        }
    }
    f
}

/// Split of the remainder source into the state-dependent part and the
/// part frozen at `u = 0`: returns `(F(t,x,u) - F(t,x,0), F(t,x,0))`.
/// The second piece carries the singular weight `(-t)^lambda`; the first
/// is the Lipschitz piece the energy estimates act on.
pub fn remainder_source_split(
    t: f64,
    u: &State,
    ustar: &State,
    dt_ustar: &State,
    dx_ustar: &[State],
    params: &FluidParameters,
) -> (State, State) {
    let full = remainder_source(t, u, ustar, dt_ustar, dx_ustar, params);
    let frozen = remainder_source(t, &[0.0; 4], ustar, dt_ustar, dx_ustar, params);
    (core::array::from_fn(|i| full[i] - frozen[i]), frozen)
}

/// Coefficients of the transport step in the leading-order construction:
/// the twice-rescaled state `W = That(t) u` satisfies
/// `d_t W = -Bhat^i d_i W + Ghat` along the iteration.
#[derive(Debug, Clone)]
pub struct LotCoefficients {
    pub b_hat: [Mat4; 3],
    pub g_hat: State,
}

/// Assemble the transport coefficients at time `t` and state `u`:
///
/// ```text
/// Bhat^i = That (B0)^-1 B^i inv(That)
/// Ghat   = (1/t) [ That (B0)^-1 Bc u - Dhat That u ] + That (B0)^-1 G
/// ```
///
/// with `Dhat = diag(0, G1, G2, G3)` the exact logarithmic derivative of
/// `That`.
pub fn lot_coefficients(
    t: f64,
    u: &State,
    params: &FluidParameters,
) -> Result<LotCoefficients, CoefficientError> {
    let coeff = assemble_full(t, u, params);
    let that = rescaling_t_hat(t, params).expect("t < 0");
    let [g1, g2, g3] = params.rates;
    let dhat = [0.0, g1, g2, g3];

    let mut b_hat = [[[0.0; 4]; 4]; 3];
    for axis in 0..3 {
        // Solve B0 X = B^axis column by column, then conjugate by That.
        for c in 0..4 {
            let col: State = core::array::from_fn(|r| coeff.b_adv[axis][r][c]);
            let x = solve4(&coeff.b0, &col)?;
            for r in 0..4 {
                b_hat[axis][r][c] = that.diag[r] * x[r] / that.diag[c];
            }
        }
    }

    let bc_u = mat_vec4(&coeff.bc, u);
    let y_bc = solve4(&coeff.b0, &bc_u)?;
    let y_g = solve4(&coeff.b0, &source_g(t, u, params))?;
    let mut g_hat = [0.0; 4];
    for r in 0..4 {
        g_hat[r] =
            (that.diag[r] * y_bc[r] - dhat[r] * that.diag[r] * u[r]) / t + that.diag[r] * y_g[r];
    }
    Ok(LotCoefficients { b_hat, g_hat })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use kasner_geometry::KasnerBackground;

    fn reference() -> FluidParameters {
        let bg = KasnerBackground::vacuum(0.0).unwrap();
        FluidParameters::new(bg, 1.8).unwrap()
    }

    #[test]
    fn transport_matrices_at_rest_have_the_frozen_entries() {
        // At a rest state the transport matrices reduce to one symmetric
        // pair of entries per axis, independent of the amplitude w.
        let p = reference();
        let [g1, g2, g3] = p.rates;
        let gm1 = p.gamma - 1.0;
        for (t, w) in [(-0.5f64, 1.0f64), (-0.05, 1.7)] {
            let lot = lot_coefficients(t, &[w, 0.0, 0.0, 0.0], &p).unwrap();
            let mt = -t;
            assert_relative_eq!(lot.b_hat[0][0][1], -gm1 * mt.powf(g1), max_relative = 1e-12);
            assert_relative_eq!(lot.b_hat[0][1][0], -mt.powf(-g1), max_relative = 1e-12);
            assert_relative_eq!(
                lot.b_hat[1][0][2],
                -gm1 * mt.powf(2.0 * g2 - g1),
                max_relative = 1e-12
            );
            assert_relative_eq!(lot.b_hat[1][2][0], -mt.powf(-g1), max_relative = 1e-12);
            assert_relative_eq!(
                lot.b_hat[2][0][3],
                -gm1 * mt.powf(2.0 * g3 - g1),
                max_relative = 1e-12
            );
            assert_relative_eq!(lot.b_hat[2][3][0], -mt.powf(-g1), max_relative = 1e-12);
            // All other entries vanish.
            let mut off = 0.0f64;
            for axis in 0..3 {
                for r in 0..4 {
                    for c in 0..4 {
                        let keep = (r == 0 && c == axis + 1) || (r == axis + 1 && c == 0);
                        if !keep {
                            off = off.max(lot.b_hat[axis][r][c].abs());
                        }
                    }
                }
            }
            assert!(off < 1e-12, "unexpected transport entry {off}");
            assert!(lot.g_hat.iter().all(|&x| x.abs() < 1e-12));
        }
    }

    #[test]
    fn split_source_reassembles() {
        let p = reference();
        let u = [0.02, -0.01, 0.005, 0.0];
        let ustar = [1.0, 0.1, -0.05, 0.02];
        let dt_ustar = [0.3, -0.2, 0.1, 0.05];
        let dx = [[0.01, 0.04, -0.02, 0.0]];
        let full = remainder_source(-0.4, &u, &ustar, &dt_ustar, &dx, &p);
        let (tilde, frozen) = remainder_source_split(-0.4, &u, &ustar, &dt_ustar, &dx, &p);
        for r in 0..4 {
            assert_relative_eq!(tilde[r] + frozen[r], full[r], epsilon = 1e-14);
        }
        // The frozen part must not depend on u.
        let (_, frozen2) =
            remainder_source_split(-0.4, &[0.1, 0.0, 0.0, 0.0], &ustar, &dt_ustar, &dx, &p);
        assert_eq!(frozen, frozen2);
    }
}
