use crate::background::KasnerBackground;
use crate::GeometryError;

/// Diagonal metric in solver coordinates at a fixed `t < 0`:
/// `g = diag(-(-t)^{2 rho0}, (-t)^{2 rho0}, (-t)^{2 rho2}, (-t)^{2 rho3})`.
#[derive(Clone, Copy, Debug)]
pub struct Metric {
    pub diag: [f64; 4],
    /// Half-powers `(rho0, rho0, rho2, rho3)` of the four diagonal entries.
    pub rho: [f64; 4],
}

impl Metric {
    pub fn inverse_diag(&self) -> [f64; 4] {
        [1.0 / self.diag[0], 1.0 / self.diag[1], 1.0 / self.diag[2], 1.0 / self.diag[3]]
    }

    /// `g(u, v)` for vectors in solver coordinates.
    pub fn inner(&self, u: &[f64; 4], v: &[f64; 4]) -> f64 {
        (0..4).map(|i| self.diag[i] * u[i] * v[i]).sum()
    }
}

/// `gamma[a][b][c] = Gamma^a_{bc}`, fully populated (zeros included).
#[derive(Clone, Copy, Debug)]
pub struct Christoffels {
    pub gamma: [[[f64; 4]; 4]; 4],
}

/// Metric half-powers for the background: `rho0 = (K^2-1)/4`,
/// `rho2 = (1-L)/2`, `rho3 = (1+L)/2`.
pub fn metric_half_powers(bg: &KasnerBackground) -> [f64; 4] {
    let rho0 = (bg.k * bg.k - 1.0) / 4.0;
    [rho0, rho0, (1.0 - bg.l) / 2.0, (1.0 + bg.l) / 2.0]
}

/// Metric and Christoffel symbols in solver coordinates at `t < 0`.
///
/// Every nonzero symbol is `(const / t)` times a ratio of metric components:
/// with `a = g_xx`, `b = g_yy`, `c = g_zz`,
/// `Gamma^t_tt = Gamma^t_xx = Gamma^x_tx = rho0/t`,
/// `Gamma^y_ty = rho2/t`, `Gamma^z_tz = rho3/t`,
/// `Gamma^t_yy = rho2 b/(a t)`, `Gamma^t_zz = rho3 c/(a t)`.
pub fn metric_christoffels(
    t: f64,
    bg: &KasnerBackground,
) -> Result<(Metric, Christoffels), GeometryError> {
    if !(t < 0.0) {
        return Err(GeometryError::TimeNotNegative(t));
    }
    let rho = metric_half_powers(bg);
    let mt = -t;
    let a = mt.powf(2.0 * rho[0]);
    let b = mt.powf(2.0 * rho[2]);
    let c = mt.powf(2.0 * rho[3]);
    let metric = Metric { diag: [-a, a, b, c], rho };

    let mut gamma = [[[0.0; 4]; 4]; 4];
    gamma[0][0][0] = rho[0] / t;
    gamma[0][1][1] = rho[0] / t;
    gamma[1][0][1] = rho[0] / t;
    gamma[1][1][0] = rho[0] / t;
    gamma[2][0][2] = rho[2] / t;
    gamma[2][2][0] = rho[2] / t;
    gamma[3][0][3] = rho[3] / t;
    gamma[3][3][0] = rho[3] / t;
    gamma[0][2][2] = rho[2] * b / (a * t);
    gamma[0][3][3] = rho[3] * c / (a * t);
    Ok((metric, Christoffels { gamma }))
}

/// Frame components `W^a` of a fluid vector given in tilde coordinates.
///
/// The decomposition weights the orthonormal-frame components by powers of
/// `t~` tied to the sound speed: `V^t~ = t~^{cs2} W^0` and
/// `V^x~_i = t~^{2(cs2 - p_i)} W^i`. Bounded nonzero `W` limits at
/// `t~ -> 0` are exactly the asymptotic data of the singular initial value
/// problem.
pub fn frame_components(
    ttilde: f64,
    v_tilde: &[f64; 4],
    bg: &KasnerBackground,
    cs2: f64,
) -> Result<[f64; 4], GeometryError> {
    if !(ttilde > 0.0) {
        return Err(GeometryError::TildeTimeNotPositive(ttilde));
    }
    Ok([
        v_tilde[0] * ttilde.powf(-cs2),
        v_tilde[1] * ttilde.powf(-2.0 * (cs2 - bg.p[0])),
        v_tilde[2] * ttilde.powf(-2.0 * (cs2 - bg.p[1])),
        v_tilde[3] * ttilde.powf(-2.0 * (cs2 - bg.p[2])),
    ])
}

/// Inverse of [`frame_components`].
pub fn frame_vector(
    ttilde: f64,
    w: &[f64; 4],
    bg: &KasnerBackground,
    cs2: f64,
) -> Result<[f64; 4], GeometryError> {
    if !(ttilde > 0.0) {
        return Err(GeometryError::TildeTimeNotPositive(ttilde));
    }
    Ok([
        w[0] * ttilde.powf(cs2),
        w[1] * ttilde.powf(2.0 * (cs2 - bg.p[0])),
        w[2] * ttilde.powf(2.0 * (cs2 - bg.p[1])),
        w[3] * ttilde.powf(2.0 * (cs2 - bg.p[2])),
    ])
}
