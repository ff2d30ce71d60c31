//! Background geometry for anisotropic big-bang spacetimes.
//!
//! Two coordinate systems appear throughout the suite:
//!
//! * "tilde" coordinates, in which the metric reads
//!   `-dt~^2 + sum_i t~^{2 p_i} dx~_i^2` with `t~ > 0` and the singularity
//!   at `t~ = 0`;
//! * "solver" coordinates `(t, x, y, z)` with `t < 0`, obtained by the
//!   power-law time reparametrization of [`coordinate_transform`], in which
//!   all metric components are pure powers of `-t` and the singularity sits
//!   at `t = 0^-`.
//!
//! The anisotropy is parametrized by `K` (and a scalar-field amplitude `A`);
//! the exponent triple `p` always satisfies `sum p_i = 1` and
//! `sum p_i^2 = 1 - A^2`.

mod background;
mod curvature;
mod transform;

pub use background::{AxisPerm, KasnerBackground, admissible_k_squared_range, exponents_from_k, normalize_k};
pub use curvature::{Christoffels, Metric, frame_components, frame_vector, metric_christoffels};
pub use transform::{Direction, coordinate_transform, dttilde_dt};

/// Largest scalar-field amplitude compatible with a real exponent triple;
/// at `|A| = sqrt(2/3)` the background degenerates to the isotropic case.
pub const A_MAX: f64 = 0.816496580927726; // sqrt(2/3)

#[derive(Debug, thiserror::Error)]
pub enum GeometryError {
    #[error("scalar field amplitude {0} outside [-sqrt(2/3), sqrt(2/3)]")]
    AmplitudeOutOfRange(f64),
    #[error("K = {k} inadmissible for A = {a}: K^2 must lie in [{lo:.12}, {hi:.12}]")]
    InadmissibleAnisotropy { k: f64, a: f64, lo: f64, hi: f64 },
    #[error("K = {0} lies on the excluded locus |K| = 1")]
    ExcludedK(f64),
    #[error("time value {0} must be negative (singularity at t = 0)")]
    TimeNotNegative(f64),
    #[error("tilde time value {0} must be positive")]
    TildeTimeNotPositive(f64),
    #[error("spatial axis index {0} out of range 0..3")]
    AxisOutOfRange(usize),
}
