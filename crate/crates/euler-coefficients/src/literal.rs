use fluid_params::{rescaling_t, FluidParameters, Rescaling};
use kasner_geometry::{metric_christoffels, Metric};

use crate::{Mat4, State};

/// Covariant principal symbol `A^axis(V)` of the unrescaled fluid system
/// against an arbitrary diagonal metric:
///
/// ```text
/// A^d_ab = -C0 V_a V_b V^d / (V.V) + V^d g_ab + delta^d_b V_a + delta^d_a V_b
/// ```
///
/// with `C0 = (3 cs2 + 1)/cs2` and indices lowered by the metric.  This is
/// the verification route: it divides by the norm and is assembled exactly
/// as written, with no algebraic simplification shared with the
/// production path.
pub fn covariant_symbol(axis: usize, v: &State, metric: &Metric, cs2: f64) -> Mat4 {
    let vlo = [
        metric.diag[0] * v[0],
        metric.diag[1] * v[1],
        metric.diag[2] * v[2],
        metric.diag[3] * v[3],
    ];
    let vv = vlo[0] * v[0] + vlo[1] * v[1] + vlo[2] * v[2] + vlo[3] * v[3];
    let c0 = (3.0 * cs2 + 1.0) / cs2;
    let vd = v[axis];
    let mut a = [[0.0; 4]; 4];
    for al in 0..4 {
        for be in 0..4 {
            let mut entry = -c0 * vlo[al] * vlo[be] * vd / vv;
            if al == be {
                entry += vd * metric.diag[al];
            }
            if be == axis {
                entry += vlo[al];
            }
            if al == axis {
                entry += vlo[be];
            }
            a[al][be] = entry;
        }
    }
    a
}

/// Scalar normalizer applied after the rescaling sandwich:
/// `m = -cs2 * (V.V) * (-t)^(-(k^2 - 1) - 5 G1)`.
pub fn multiplier(t: f64, vv: f64, params: &FluidParameters) -> f64 {
    let k2 = params.bg.k * params.bg.k;
    let g1 = params.rates[0];
    -params.cs2 * vv * (-t).powf(-(k2 - 1.0) - 5.0 * g1)
}

fn physical_state(t: f64, u: &State, params: &FluidParameters) -> (State, Metric, f64, Rescaling) {
    let big_t = rescaling_t(t, params).expect("t < 0");
    let v = big_t.apply(*u);
    let (metric, _) = metric_christoffels(t, &params.bg).expect("t < 0");
    let vv = metric.inner(&v, &v);
    (v, metric, vv, big_t)
}

/// Literal principal coefficients `[B0, B^x, B^y, B^z]` built by the
/// sandwich `m T' A^d(T u) T`.
pub fn literal_principal(t: f64, u: &State, params: &FluidParameters) -> [Mat4; 4] {
    let (v, metric, vv, big_t) = physical_state(t, u, params);
    let m = multiplier(t, vv, params);
    let mut out = [[[0.0; 4]; 4]; 4];
    for axis in 0..4 {
        let a = covariant_symbol(axis, &v, &metric, params.cs2);
        for r in 0..4 {
            for c in 0..4 {
                out[axis][r][c] = m * big_t.diag[r] * a[r][c] * big_t.diag[c];
            }
        }
    }
    out
}

/// Literal zeroth-order term `N(t, u)` of the rescaled system,
/// `B0 d_t u + B^i d_i u + N = 0`, assembled from the derivative of the
/// rescaling and the Christoffel contraction:
///
/// ```text
/// N = m T' [ A^t(V) (dT/dt) u  +  (A^d(V) Gamma_d) V ]
/// ```
///
/// The production closed forms must satisfy `(1/t) Bc(u) u + G(t, u) = -N`.
pub fn literal_zeroth(t: f64, u: &State, params: &FluidParameters) -> State {
    let (v, metric, vv, big_t) = physical_state(t, u, params);
    let (_, christoffels) = metric_christoffels(t, &params.bg).expect("t < 0");
    let m = multiplier(t, vv, params);
    let dt_diag = big_t.ddt();

    let symbols: [Mat4; 4] = core::array::from_fn(|d| covariant_symbol(d, &v, &metric, params.cs2));
    let mut zeroth = [0.0; 4];
    for al in 0..4 {
        // A^t (dT/dt) u
        for be in 0..4 {
            zeroth[al] += symbols[0][al][be] * dt_diag[be] * u[be];
        }
        // A^d_ab Gamma^b_dl V^l, summed over direction d and indices b, l
        for d in 0..4 {
            for be in 0..4 {
                for la in 0..4 {
                    zeroth[al] += symbols[d][al][be] * christoffels.gamma[be][d][la] * v[la];
                }
            }
        }
    }
    let mut n = [0.0; 4];
    for al in 0..4 {
        n[al] = m * big_t.diag[al] * zeroth[al];
    }
    n
}
