use std::f64::consts::PI;
use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::grid::{Field, Grid};

/// Planned 1-d transforms of length `n`, applied line by line along each
/// axis of a (possibly multi-dimensional) grid.
pub struct SpectralOps {
    n: usize,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

/// Integer frequency of slot `j` in an n-point transform, with the
/// unpaired Nyquist mode mapped to zero.  The same map feeds the
/// derivative multiplier and the Sobolev weights, keeping them mutually
/// consistent.
fn freq(j: usize, n: usize) -> f64 {
    if 2 * j < n {
        j as f64
    } else if 2 * j == n {
        0.0
    } else {
        j as f64 - n as f64
    }
}

/// All (start, stride) pairs describing the 1-d lines of `grid` along
/// `axis`.
fn lines(grid: &Grid, axis: usize) -> Vec<(usize, usize)> {
    let n = grid.n;
    assert!(axis < grid.dim, "axis {axis} out of range for dim {}", grid.dim);
    match (grid.dim, axis) {
        (1, 0) => vec![(0, 1)],
        (2, 0) => (0..n).map(|iy| (iy * n, 1)).collect(),
        (2, 1) => (0..n).map(|ix| (ix, n)).collect(),
        (3, 0) => (0..n * n).map(|p| (p * n, 1)).collect(),
        (3, 1) => {
            let mut v = Vec::with_capacity(n * n);
            for iz in 0..n {
                for ix in 0..n {
                    v.push((iz * n * n + ix, n));
                }
            }
            v
        }
        (3, 2) => {
            let mut v = Vec::with_capacity(n * n);
            for iy in 0..n {
                for ix in 0..n {
                    v.push((iy * n + ix, n * n));
                }
            }
            v
        }
        _ => unreachable!(),
    }
}

impl SpectralOps {
    pub fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self { n, fwd: planner.plan_fft_forward(n), inv: planner.plan_fft_inverse(n) }
    }

    /// Spectral derivative of one scalar component along `axis`.
    pub fn derivative_component(&self, grid: &Grid, data: &[f64], axis: usize, out: &mut [f64]) {
        assert_eq!(grid.n, self.n);
        assert_eq!(data.len(), grid.points());
        assert_eq!(out.len(), grid.points());
        let n = self.n;
        let mut buf = vec![Complex64::default(); n];
        let norm = 1.0 / n as f64;
        for (start, stride) in lines(grid, axis) {
            for j in 0..n {
                buf[j] = Complex64::new(data[start + j * stride], 0.0);
            }
            self.fwd.process(&mut buf);
            for (j, b) in buf.iter_mut().enumerate() {
                *b *= Complex64::new(0.0, freq(j, n) * norm);
            }
            self.inv.process(&mut buf);
            for j in 0..n {
                out[start + j * stride] = buf[j].re;
            }
        }
    }

    /// Derivative of every component of a field along `axis`.
    pub fn derivative<const R: usize>(&self, field: &Field<R>, axis: usize) -> Field<R> {
        let mut out = Field::zeros(field.grid);
        for c in 0..R {
            self.derivative_component(&field.grid, &field.comp[c], axis, &mut out.comp[c]);
        }
        out
    }

    /// Two-thirds dealiasing: zero every mode with `|m| > n/3` along each
    /// axis, in place.
    pub fn dealias<const R: usize>(&self, field: &mut Field<R>) {
        let n = self.n;
        let cut = n as f64 / 3.0;
        let mut buf = vec![Complex64::default(); n];
        let norm = 1.0 / n as f64;
        for axis in 0..field.grid.dim {
            let line_list = lines(&field.grid, axis);
            for c in 0..R {
                for &(start, stride) in &line_list {
                    for j in 0..n {
                        buf[j] = Complex64::new(field.comp[c][start + j * stride], 0.0);
                    }
                    self.fwd.process(&mut buf);
                    for (j, b) in buf.iter_mut().enumerate() {
                        if freq(j, n).abs() > cut || 2 * j == n {
                            *b = Complex64::default();
                        } else {
                            *b *= norm;
                        }
                    }
                    self.inv.process(&mut buf);
                    for j in 0..n {
                        field.comp[c][start + j * stride] = buf[j].re;
                    }
                }
            }
        }
    }
}

/// Sobolev weight of a mode: `sum over |alpha| <= k` of
/// `prod_i m_i^(2 alpha_i)`.
fn sobolev_weight(m: [f64; 3], k: usize) -> f64 {
    let mut w = 0.0;
    for a1 in 0..=k {
        for a2 in 0..=(k - a1) {
            for a3 in 0..=(k - a1 - a2) {
                w += m[0].powi(2 * a1 as i32) * m[1].powi(2 * a2 as i32) * m[2].powi(2 * a3 as i32);
            }
        }
    }
    w
}

/// Discrete `H^k` norm of a field over `[0, 2 pi)^d`, all components
/// summed, computed in Fourier space with the same Nyquist-dropped
/// frequency map as the spectral derivative.
pub fn sobolev_norm<const R: usize>(ops: &SpectralOps, field: &Field<R>, k: usize) -> f64 {
    let grid = field.grid;
    let n = grid.n;
    assert_eq!(n, ops.n);
    let total_pts = grid.points();
    let mut buf_line = vec![Complex64::default(); n];
    let mut total = 0.0;
    for c in 0..R {
        let mut hat: Vec<Complex64> =
            field.comp[c].iter().map(|&x| Complex64::new(x, 0.0)).collect();
        for axis in 0..grid.dim {
            for (start, stride) in lines(&grid, axis) {
                for j in 0..n {
                    buf_line[j] = hat[start + j * stride];
                }
                ops.fwd.process(&mut buf_line);
                for j in 0..n {
                    hat[start + j * stride] = buf_line[j];
                }
            }
        }
        for idx in 0..total_pts {
            let ix = idx % n;
            let iy = (idx / n) % n;
            let iz = idx / (n * n);
            let m = match grid.dim {
                1 => [freq(ix, n), 0.0, 0.0],
                2 => [freq(ix, n), freq(iy, n), 0.0],
                _ => [freq(ix, n), freq(iy, n), freq(iz, n)],
            };
            total += sobolev_weight(m, k) * hat[idx].norm_sqr();
        }
    }
    let norm = (2.0 * PI).powi(grid.dim as i32) / (total_pts as f64).powi(2);
    (total * norm).sqrt()
}

/// Rectangle-rule integral of a scalar sample array over the box; exact
/// for band-limited periodic integrands.
pub fn rectangle_integral(grid: &Grid, data: &[f64]) -> f64 {
    assert_eq!(data.len(), grid.points());
    data.iter().sum::<f64>() * grid.cell_volume()
}

/// `H^k` norm assembled the literal way: spectral derivatives composed
/// per multi-index, squared and integrated by the rectangle rule.  Exists
/// solely to cross-check [`sobolev_norm`]; the two must agree to rounding
/// for any grid function.
pub fn sobolev_norm_literal<const R: usize>(ops: &SpectralOps, field: &Field<R>, k: usize) -> f64 {
    let grid = field.grid;
    let mut total = 0.0;
    for c in 0..R {
        for a1 in 0..=k {
            for a2 in 0..=(k - a1) {
                for a3 in 0..=(k - a1 - a2) {
                    let orders = [a1, a2, a3];
                    if (grid.dim < 2 && a2 > 0) || (grid.dim < 3 && a3 > 0) {
                        continue;
                    }
                    let mut d = field.comp[c].clone();
                    let mut scratch = vec![0.0; d.len()];
                    for (axis, &ord) in orders.iter().enumerate().take(grid.dim) {
                        for _ in 0..ord {
                            ops.derivative_component(&grid, &d, axis, &mut scratch);
                            std::mem::swap(&mut d, &mut scratch);
                        }
                    }
                    let sq: Vec<f64> = d.iter().map(|&x| x * x).collect();
                    total += rectangle_integral(&grid, &sq);
                }
            }
        }
    }
    total.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn derivative_of_a_pure_mode_is_exact() {
        let g = Grid::new(1, 64);
        let ops = SpectralOps::new(64);
        let u = Field::<1>::from_fn(g, |[x, _, _]| [(3.0 * x).sin()]);
        let du = ops.derivative(&u, 0);
        for idx in 0..g.points() {
            let [x, _, _] = g.coords(idx);
            assert_relative_eq!(du.comp[0][idx], 3.0 * (3.0 * x).cos(), epsilon = 1e-11);
        }
    }

    #[test]
    fn derivative_along_each_axis_in_three_dimensions() {
        let g = Grid::new(3, 16);
        let ops = SpectralOps::new(16);
        let u = Field::<1>::from_fn(g, |[x, y, z]| {
            [(2.0 * x).sin() * y.cos() + (3.0 * z).sin()]
        });
        let dx = ops.derivative(&u, 0);
        let dy = ops.derivative(&u, 1);
        let dz = ops.derivative(&u, 2);
        for idx in 0..g.points() {
            let [x, y, z] = g.coords(idx);
            assert_relative_eq!(
                dx.comp[0][idx],
                2.0 * (2.0 * x).cos() * y.cos(),
                epsilon = 1e-11
            );
            assert_relative_eq!(
                dy.comp[0][idx],
                -(2.0 * x).sin() * y.sin(),
                epsilon = 1e-11
            );
            assert_relative_eq!(dz.comp[0][idx], 3.0 * (3.0 * z).cos(), epsilon = 1e-11);
        }
    }

    #[test]
    fn sobolev_norm_frozen_values() {
        let g = Grid::new(1, 64);
        let ops = SpectralOps::new(64);
        let one = Field::<1>::constant(g, [1.0]);
        assert_relative_eq!(sobolev_norm(&ops, &one, 0), (2.0 * PI).sqrt(), max_relative = 1e-13);
        let sine = Field::<1>::from_fn(g, |[x, _, _]| [x.sin()]);
        // ||sin||_{H1}^2 = ||sin||^2 + ||cos||^2 = pi + pi.
        assert_relative_eq!(sobolev_norm(&ops, &sine, 1), (2.0 * PI).sqrt(), max_relative = 1e-13);
        assert_relative_eq!(sobolev_norm(&ops, &sine, 0), PI.sqrt(), max_relative = 1e-13);
    }

    #[test]
    fn fourier_and_literal_norms_agree() {
        let g = Grid::new(2, 16);
        let ops = SpectralOps::new(16);
        let u = Field::<2>::from_fn(g, |[x, y, _]| {
            [
                0.3 + (x + 2.0 * y).sin() + 0.2 * (3.0 * x).cos(),
                (2.0 * x).cos() * (y).sin(),
            ]
        });
        for k in 0..=3 {
            let a = sobolev_norm(&ops, &u, k);
            let b = sobolev_norm_literal(&ops, &u, k);
            assert_relative_eq!(a, b, max_relative = 1e-12);
        }
    }

    #[test]
    fn dealias_zeroes_the_upper_third() {
        let g = Grid::new(1, 12);
        let ops = SpectralOps::new(12);
        // Mode 5 exceeds 12/3 = 4 and must vanish; mode 3 survives.
        let mut u = Field::<1>::from_fn(g, |[x, _, _]| [(3.0 * x).sin() + 0.5 * (5.0 * x).cos()]);
        ops.dealias(&mut u);
        let expect = Field::<1>::from_fn(g, |[x, _, _]| [(3.0 * x).sin()]);
        assert!(u.sup_distance(&expect) < 1e-12);
    }
}
