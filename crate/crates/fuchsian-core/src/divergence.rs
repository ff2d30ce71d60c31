use crate::FuchsianSystem;

/// Spacetime divergence `d_t B0 + d_i B^i` of the symbol family along a
/// solution patch, evaluated by central differences.
///
/// The time term moves both the explicit time argument and the state
/// (chain rule through `dt_v`); each spatial term moves only the state
/// (chain rule through `dx_v[axis]`), since the coefficient families
/// depend on space through the solution alone.  `h` is the difference
/// step; `1e-4` balances truncation against cancellation for O(1)
/// coefficients.
pub fn divergence_map<S: FuchsianSystem<R>, const R: usize>(
    sys: &S,
    t: f64,
    idx: usize,
    v: &[f64; R],
    dt_v: &[f64; R],
    dx_v: &[[f64; R]],
    h: f64,
) -> [[f64; R]; R] {
    assert_eq!(dx_v.len(), sys.spatial_dims());
    let shift = |base: &[f64; R], dir: &[f64; R], s: f64| -> [f64; R] {
        core::array::from_fn(|i| base[i] + s * dir[i])
    };
    let plus = sys.b0(t + h, idx, &shift(v, dt_v, h));
    let minus = sys.b0(t - h, idx, &shift(v, dt_v, -h));
    let mut div = [[0.0; R]; R];
    for r in 0..R {
        for c in 0..R {
            div[r][c] = (plus[r][c] - minus[r][c]) / (2.0 * h);
        }
    }
    for (axis, dv) in dx_v.iter().enumerate() {
        let plus = sys.b_adv(axis, t, idx, &shift(v, dv, h));
        let minus = sys.b_adv(axis, t, idx, &shift(v, dv, -h));
        for r in 0..R {
            for c in 0..R {
                div[r][c] += (plus[r][c] - minus[r][c]) / (2.0 * h);
            }
        }
    }
    div
}
