use std::f64::consts::PI;

/// Uniform periodic grid on `[0, 2 pi)^dim` with `n` points per axis,
/// `x` fastest: flat index `(iz * n + iy) * n + ix`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grid {
    pub dim: usize,
    pub n: usize,
}

impl Grid {
    pub fn new(dim: usize, n: usize) -> Self {
        assert!((1..=3).contains(&dim), "dim must be 1..3");
        assert!(n >= 4 && n % 2 == 0, "n must be even and >= 4");
        Self { dim, n }
    }

    pub fn points(&self) -> usize {
        self.n.pow(self.dim as u32)
    }

    pub fn spacing(&self) -> f64 {
        2.0 * PI / self.n as f64
    }

    /// Cell volume of the rectangle rule.
    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(self.dim as i32)
    }

    /// Coordinates of a flat index; unused axes report 0.
    pub fn coords(&self, idx: usize) -> [f64; 3] {
        let h = self.spacing();
        let ix = idx % self.n;
        let iy = (idx / self.n) % self.n;
        let iz = idx / (self.n * self.n);
        match self.dim {
            1 => [ix as f64 * h, 0.0, 0.0],
            2 => [ix as f64 * h, iy as f64 * h, 0.0],
            _ => [ix as f64 * h, iy as f64 * h, iz as f64 * h],
        }
    }
}

/// `R`-component field stored one contiguous scalar array per component.
#[derive(Debug, Clone)]
pub struct Field<const R: usize> {
    pub grid: Grid,
    pub comp: [Vec<f64>; R],
}

impl<const R: usize> Field<R> {
    pub fn zeros(grid: Grid) -> Self {
        let len = grid.points();
        Self { grid, comp: core::array::from_fn(|_| vec![0.0; len]) }
    }

    pub fn from_fn(grid: Grid, f: impl Fn([f64; 3]) -> [f64; R]) -> Self {
        let mut out = Self::zeros(grid);
        for idx in 0..grid.points() {
            let v = f(grid.coords(idx));
            for c in 0..R {
                out.comp[c][idx] = v[c];
            }
        }
        out
    }

    /// Spatially constant field.
    pub fn constant(grid: Grid, v: [f64; R]) -> Self {
        Self::from_fn(grid, |_| v)
    }

    pub fn get(&self, idx: usize) -> [f64; R] {
        core::array::from_fn(|c| self.comp[c][idx])
    }

    pub fn set(&mut self, idx: usize, v: [f64; R]) {
        for c in 0..R {
            self.comp[c][idx] = v[c];
        }
    }

    /// `self += s * other`, entrywise.
    pub fn axpy(&mut self, s: f64, other: &Self) {
        debug_assert_eq!(self.grid, other.grid);
        for c in 0..R {
            for (a, b) in self.comp[c].iter_mut().zip(other.comp[c].iter()) {
                *a += s * b;
            }
        }
    }

    pub fn scale(&mut self, s: f64) {
        for c in 0..R {
            for a in self.comp[c].iter_mut() {
                *a *= s;
            }
        }
    }

    /// Per-component supremum norm.
    pub fn sup_norms(&self) -> [f64; R] {
        core::array::from_fn(|c| self.comp[c].iter().fold(0.0f64, |m, &x| m.max(x.abs())))
    }

    /// Largest absolute difference over all components and points.
    pub fn sup_distance(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.grid, other.grid);
        let mut worst = 0.0f64;
        for c in 0..R {
            for (a, b) in self.comp[c].iter().zip(other.comp[c].iter()) {
                worst = worst.max((a - b).abs());
            }
        }
        worst
    }

    pub fn is_finite(&self) -> bool {
        self.comp.iter().all(|v| v.iter().all(|x| x.is_finite()))
    }
}
