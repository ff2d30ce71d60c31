use crate::LotError;

/// Geometric grid of negative times accumulating at `t = 0`: adjacent
/// nodes satisfy `t_{j+1} = ratio * t_j`, so the grid is uniform in
/// `tau = -ln(-t)` with step `ln(1/ratio)`.  Node 0 is the shallow end
/// `t_start`; the last node is at least as deep as `t_deep`.
#[derive(Debug, Clone)]
pub struct TimeGrid {
    taus: Vec<f64>,
    dtau: f64,
}

impl TimeGrid {
    pub fn geometric(t_start: f64, t_deep: f64, ratio: f64) -> Result<Self, LotError> {
        if !(t_start < 0.0 && t_deep < 0.0 && t_deep > t_start) {
            return Err(LotError::BadTimeBounds(t_start, t_deep));
        }
        if !(ratio > 0.0 && ratio < 1.0) {
            return Err(LotError::BadRatio(ratio));
        }
        let tau0 = -(-t_start).ln();
        let tau_deep = -(-t_deep).ln();
        let dtau = (1.0 / ratio).ln();
        let steps = ((tau_deep - tau0) / dtau).ceil() as usize;
        if steps < 3 {
            return Err(LotError::BadTimeBounds(t_start, t_deep));
        }
        let taus = (0..=steps).map(|j| tau0 + j as f64 * dtau).collect();
        Ok(Self { taus, dtau })
    }

    pub fn len(&self) -> usize {
        self.taus.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dtau(&self) -> f64 {
        self.dtau
    }

    pub fn tau(&self, j: usize) -> f64 {
        self.taus[j]
    }

    pub fn t(&self, j: usize) -> f64 {
        -(-self.taus[j]).exp()
    }

    /// Shallow and deep ends as times, `(t_start, t_deepest)`.
    pub fn t_range(&self) -> (f64, f64) {
        (self.t(0), self.t(self.len() - 1))
    }

    /// Stencil start and Lagrange weights for cubic interpolation in
    /// `tau`.  The stencil is the four nodes around the containing
    /// interval, clamped at both ends of the grid.
    pub fn lagrange4(&self, tau: f64) -> (usize, [f64; 4]) {
        let nn = self.taus.len();
        let pos = (tau - self.taus[0]) / self.dtau;
        let j0 = ((pos.floor() as isize) - 1).clamp(0, nn as isize - 4) as usize;
        let mut c = [0.0; 4];
        for k in 0..4 {
            let mut num = 1.0;
            let mut den = 1.0;
            for l in 0..4 {
                if l != k {
                    num *= tau - self.taus[j0 + l];
                    den *= self.taus[j0 + k] - self.taus[j0 + l];
                }
            }
            c[k] = num / den;
        }
        (j0, c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn nodes_follow_the_geometric_ratio() {
        let g = TimeGrid::geometric(-0.5, -1e-12, 0.9).unwrap();
        assert!(g.len() > 250 && g.len() < 270);
        assert_relative_eq!(g.t(0), -0.5, max_relative = 1e-14);
        assert!(g.t(g.len() - 1) >= -1e-12);
        for j in 0..5 {
            assert_relative_eq!(g.t(j + 1) / g.t(j), 0.9, max_relative = 1e-12);
        }
    }

    #[test]
    fn cubic_weights_reproduce_cubics_exactly() {
        let g = TimeGrid::geometric(-1.0, -1e-3, 0.8).unwrap();
        let poly = |x: f64| 1.0 + x * (0.5 + x * (-2.0 + 0.25 * x));
        for &tau in &[g.tau(0) + 0.07, g.tau(3) + 0.11, g.tau(g.len() - 1) - 0.01] {
            let (j0, c) = g.lagrange4(tau);
            let interp: f64 = (0..4).map(|k| c[k] * poly(g.tau(j0 + k))).sum();
            assert_relative_eq!(interp, poly(tau), max_relative = 1e-12);
        }
    }

    #[test]
    fn rejects_bad_bounds_and_ratio() {
        assert!(TimeGrid::geometric(-1e-12, -0.5, 0.9).is_err());
        assert!(TimeGrid::geometric(0.5, -1e-12, 0.9).is_err());
        assert!(TimeGrid::geometric(-0.5, -1e-12, 1.2).is_err());
    }
}
