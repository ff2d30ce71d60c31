use crate::grid::{Field, Grid};

/// Fourth-order central difference along `axis` with periodic wrap:
/// `(-f[i+2] + 8 f[i+1] - 8 f[i-1] + f[i-2]) / (12 h)`.
///
/// Independent verification backend for the spectral derivative; shares
/// no machinery with it.
pub fn fd4_derivative_component(grid: &Grid, data: &[f64], axis: usize, out: &mut [f64]) {
    assert!(axis < grid.dim);
    assert_eq!(data.len(), grid.points());
    assert_eq!(out.len(), grid.points());
    let n = grid.n;
    let h = grid.spacing();
    let stride = n.pow(axis as u32);
    let points = grid.points();
    for idx in 0..points {
        // Position of this point along the differencing axis.
        let along = (idx / stride) % n;
        let base = idx - along * stride;
        let at = |j: isize| -> f64 {
            let wrapped = ((along as isize + j).rem_euclid(n as isize)) as usize;
            data[base + wrapped * stride]
        };
        out[idx] = (-at(2) + 8.0 * at(1) - 8.0 * at(-1) + at(-2)) / (12.0 * h);
    }
}

/// Field-level wrapper over [`fd4_derivative_component`].
pub fn fd4_derivative<const R: usize>(field: &Field<R>, axis: usize) -> Field<R> {
    let mut out = Field::zeros(field.grid);
    for c in 0..R {
        fd4_derivative_component(&field.grid, &field.comp[c], axis, &mut out.comp[c]);
    }
    out
}
