use fluid_params::FluidParameters;

use crate::{CoefficientError, Mat4, State};

/// Minkowski inner product of a frame state with itself:
/// `-(v0)^2 + (v1)^2 + (v2)^2 + (v3)^2`.  Negative for timelike states.
pub fn minkowski_inner(v: &State) -> f64 {
    -v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]
}

/// Quadratic scalar `r(v) = cs2 * ((v0)^2 - (v1)^2 - (v2)^2 - (v3)^2)`
/// carried by both zeroth-order coefficients.  Positive on timelike states.
pub fn r_scalar(v: &State, cs2: f64) -> f64 {
    -cs2 * minkowski_inner(v)
}

/// Principal symbol of the rescaled system in direction `axis`
/// (0 = time, 1..3 = space), without the power-law prefactor carried by
/// the y and z directions.
///
/// Every entry is the cubic polynomial
///
/// ```text
/// cs2 * [ C0 n_m n_g v^d  -  S (v^d eta_mg + delta^d_g n_m + delta^d_m n_g) ]
/// ```
///
/// with `n = eta v`, `S` the Minkowski inner product and
/// `cs2 * C0 = 3 cs2 + 1`.  The matrix is symmetric by construction.
pub fn symbol_b(axis: usize, v: &State, cs2: f64) -> Mat4 {
    debug_assert!(axis < 4);
    let n = [-v[0], v[1], v[2], v[3]];
    let s = minkowski_inner(v);
    let c0cs2 = 3.0 * cs2 + 1.0;
    let vd = v[axis];
    let mut b = [[0.0; 4]; 4];
    // Upper triangle only, mirrored below: keeps the matrix bit-exact
    // symmetric, which the energy arguments downstream rely on.
    for m in 0..4 {
        for g in m..4 {
            let mut entry = c0cs2 * n[m] * n[g] * vd;
            if m == g {
                let eta = if m == 0 { -1.0 } else { 1.0 };
                entry -= cs2 * s * vd * eta;
            }
            if g == axis {
                entry -= cs2 * s * n[m];
            }
            if m == axis {
                entry -= cs2 * s * n[g];
            }
            b[m][g] = entry;
            b[g][m] = entry;
        }
    }
    b
}

/// Zeroth-order matrix coefficient: `Bc(v) = r(v) v^0 diag(0, G1, G2, G3)`.
pub fn bc_matrix(v: &State, params: &FluidParameters) -> Mat4 {
    let [g1, g2, g3] = params.rates;
    let f = r_scalar(v, params.cs2) * v[0];
    let mut m = [[0.0; 4]; 4];
    m[1][1] = f * g1;
    m[2][2] = f * g2;
    m[3][3] = f * g3;
    m
}

/// Zeroth-order vector source:
/// `G(t, v) = -(r(v)/t) (G1 (v1)^2 + G2 (v2)^2 + G3 (v3)^2) e_0`.
///
/// Vanishes at spatially homogeneous rest states and is bounded as
/// `t -> 0` on solutions, since the squared tilt components decay at
/// least like `|t|`.
pub fn source_g(t: f64, v: &State, params: &FluidParameters) -> State {
    let [g1, g2, g3] = params.rates;
    let quad = g1 * v[1] * v[1] + g2 * v[2] * v[2] + g3 * v[3] * v[3];
    [-r_scalar(v, params.cs2) / t * quad, 0.0, 0.0, 0.0]
}

/// Full coefficient set of the first-order system at one spacetime point.
#[derive(Debug, Clone)]
pub struct CoefficientSet {
    /// Time symbol; symmetric positive definite inside the window.
    pub b0: Mat4,
    /// Advection symbols for x, y, z with their prefactors applied.
    pub b_adv: [Mat4; 3],
    /// Zeroth-order matrix (enters as `(1/t) bc u`).
    pub bc: Mat4,
    /// Zeroth-order vector source.
    pub g: State,
}

/// Assemble all coefficients of the rescaled system at time `t < 0` and
/// state `v`.
///
/// `B0` and `B^x` carry no time dependence at all; `B^y` and `B^z` are the
/// flat symbols scaled by `(-t)^(G2 - G1)` and `(-t)^(G3 - G1)`.  The
/// assembly itself is polynomial and never fails; state validity is
/// checked separately by [`check_state`].
pub fn assemble_full(t: f64, v: &State, params: &FluidParameters) -> CoefficientSet {
    debug_assert!(t < 0.0);
    let cs2 = params.cs2;
    let [g1, g2, g3] = params.rates;
    let b0 = symbol_b(0, v, cs2);
    let bx = symbol_b(1, v, cs2);
    let mut by = symbol_b(2, v, cs2);
    let mut bz = symbol_b(3, v, cs2);
    let wy = (-t).powf(g2 - g1);
    let wz = (-t).powf(g3 - g1);
    for r in 0..4 {
        for c in 0..4 {
            by[r][c] *= wy;
            bz[r][c] *= wz;
        }
    }
    CoefficientSet {
        b0,
        b_adv: [bx, by, bz],
        bc: bc_matrix(v, params),
        g: source_g(t, v, params),
    }
}

/// Validate that a state is usable by the hyperbolic solver: positive time
/// component, timelike, and spatial tilt within `window * v0`.
pub fn check_state(v: &State, window: f64) -> Result<(), CoefficientError> {
    let tilt = (v[1] * v[1] + v[2] * v[2] + v[3] * v[3]).sqrt();
    if !(v[0] > 0.0) || tilt >= v[0] {
        return Err(CoefficientError::NotTimelike { u0: v[0], tilt });
    }
    let ratio = tilt / v[0];
    if ratio > window {
        return Err(CoefficientError::OutsideWindow { ratio, window });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sym_defect;
    use approx::assert_relative_eq;
    use kasner_geometry::KasnerBackground;

    fn reference() -> FluidParameters {
        let bg = KasnerBackground::vacuum(0.0).unwrap();
        FluidParameters::new(bg, 1.8).unwrap()
    }

    #[test]
    fn rest_state_time_symbol_is_the_isotropic_diagonal() {
        let p = reference();
        let w = 1.3;
        let b0 = symbol_b(0, &[w, 0.0, 0.0, 0.0], p.cs2);
        let c = p.gamma - 1.0;
        for r in 0..4 {
            for cidx in 0..4 {
                let expect = if r == cidx {
                    if r == 0 {
                        w * w * w
                    } else {
                        c * w * w * w
                    }
                } else {
                    0.0
                };
                assert_relative_eq!(b0[r][cidx], expect, epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn rest_state_zeroth_order_forms() {
        let p = reference();
        let w = 0.9;
        let v = [w, 0.0, 0.0, 0.0];
        let bc = bc_matrix(&v, &p);
        let f = (p.gamma - 1.0) * w * w * w;
        let [g1, g2, g3] = p.rates;
        assert_relative_eq!(bc[1][1], f * g1, max_relative = 1e-14);
        assert_relative_eq!(bc[2][2], f * g2, max_relative = 1e-14);
        assert_relative_eq!(bc[3][3], f * g3, max_relative = 1e-14);
        assert_eq!(bc[0][0], 0.0);
        let g = source_g(-0.4, &v, &p);
        assert_eq!(g, [0.0; 4]);
    }

    #[test]
    fn printed_polynomial_spot_checks() {
        // Entries of the time symbol against their expanded polynomial
        // forms, and the 00/01 entries of the x symbol.
        let p = reference();
        let gamma = p.gamma;
        let cs2 = p.cs2;
        let v = [1.1, 0.3, -0.2, 0.15];
        let sp = v[1] * v[1] + v[2] * v[2] + v[3] * v[3];
        let p0 = v[0] * v[0] + 3.0 * (gamma - 1.0) * sp;
        let q0 = (2.0 * cs2 + 1.0) * v[0] * v[0] + cs2 * sp;
        let q1 = cs2 * v[0] * v[0] + (2.0 * cs2 + 1.0) * v[1] * v[1]
            - cs2 * (v[2] * v[2] + v[3] * v[3]);
        let b0 = symbol_b(0, &v, cs2);
        assert_relative_eq!(b0[0][0], p0 * v[0], max_relative = 1e-13);
        assert_relative_eq!(b0[0][1], -q0 * v[1], max_relative = 1e-13);
        assert_relative_eq!(b0[1][1], q1 * v[0], max_relative = 1e-13);
        assert_relative_eq!(b0[1][2], (3.0 * gamma - 2.0) * v[0] * v[1] * v[2], max_relative = 1e-13);
        let bx = symbol_b(1, &v, cs2);
        assert_relative_eq!(bx[0][0], q0 * v[1], max_relative = 1e-13);
        assert_relative_eq!(bx[0][1], -q1 * v[0], max_relative = 1e-13);
    }

    #[test]
    fn symbols_are_symmetric_and_cubic() {
        let p = reference();
        let v = [1.4, -0.33, 0.18, 0.27];
        for axis in 0..4 {
            let b = symbol_b(axis, &v, p.cs2);
            assert!(sym_defect(&b) == 0.0);
            let scaled = symbol_b(axis, &v.map(|c| 2.0 * c), p.cs2);
            for r in 0..4 {
                for c in 0..4 {
                    assert_relative_eq!(scaled[r][c], 8.0 * b[r][c], max_relative = 1e-13);
                }
            }
        }
    }

    #[test]
    fn window_check_accepts_and_rejects() {
        assert!(check_state(&[1.0, 0.1, 0.1, 0.1], 0.3).is_ok());
        assert!(matches!(
            check_state(&[1.0, 0.4, 0.0, 0.0], 0.3),
            Err(CoefficientError::OutsideWindow { .. })
        ));
        assert!(matches!(
            check_state(&[1.0, 1.2, 0.0, 0.0], 0.3),
            Err(CoefficientError::NotTimelike { .. })
        ));
    }
}
