use crate::{A_MAX, GeometryError};
use serde::{Deserialize, Serialize};

/// A fixed Kasner or Kasner scalar-field background.
///
/// `l` is the anisotropy root `sqrt(K^2 - (A^2/8)(K^2+3)^2)` carrying the
/// sign of `K`, so that in vacuum `l = K` exactly. The exponent triple is
/// `p = ((K^2-1)/(K^2+3), 2(1-L)/(K^2+3), 2(1+L)/(K^2+3))`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KasnerBackground {
    pub k: f64,
    pub a: f64,
    pub l: f64,
    pub p: [f64; 3],
}

impl KasnerBackground {
    pub fn vacuum(k: f64) -> Result<Self, GeometryError> {
        Self::new(k, 0.0)
    }

    pub fn new(k: f64, a: f64) -> Result<Self, GeometryError> {
        if !(a.abs() <= A_MAX + 1e-15) {
            return Err(GeometryError::AmplitudeOutOfRange(a));
        }
        let s = k * k + 3.0;
        let l2 = k * k - a * a / 8.0 * s * s;
        // Round-off guard: the isotropic corner (K = sqrt(3), |A| = A_MAX)
        // sits exactly on the admissibility boundary l2 = 0.
        if l2 < -1e-12 {
            let (lo, hi) = admissible_k_squared_range(a);
            return Err(GeometryError::InadmissibleAnisotropy { k, a, lo, hi });
        }
        let l = l2.max(0.0).sqrt().copysign(if k == 0.0 { 1.0 } else { k });
        let p = [(k * k - 1.0) / s, 2.0 * (1.0 - l) / s, 2.0 * (1.0 + l) / s];
        Ok(Self { k, a, l, p })
    }

    /// Largest spatial exponent; for `K` in `[0, 1]` this is `p[2]`.
    pub fn max_exponent(&self) -> f64 {
        self.p[0].max(self.p[1]).max(self.p[2])
    }

    pub fn is_vacuum(&self) -> bool {
        self.a == 0.0
    }
}

/// Admissible `K^2` interval for a given scalar-field amplitude, i.e. where
/// the anisotropy root stays real. Degenerates to the point `K^2 = 3` at
/// `|A| = sqrt(2/3)`; unbounded above as `A -> 0`.
pub fn admissible_k_squared_range(a: f64) -> (f64, f64) {
    if a == 0.0 {
        return (0.0, f64::INFINITY);
    }
    let a2 = a * a;
    let disc = (2.0 - 3.0 * a2).max(0.0).sqrt();
    let lo = (4.0 - 3.0 * a2 - 2.0 * std::f64::consts::SQRT_2 * disc) / a2;
    let hi = (4.0 - 3.0 * a2 + 2.0 * std::f64::consts::SQRT_2 * disc) / a2;
    (lo.max(0.0), hi)
}

/// Exponent triple for the background `(K, A)`.
pub fn exponents_from_k(k: f64, a: f64) -> Result<[f64; 3], GeometryError> {
    Ok(KasnerBackground::new(k, a)?.p)
}

/// Relabeling of the three spatial axes. `perm[i] = j` means the new axis
/// `i` carries the exponent of the old axis `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxisPerm(pub [usize; 3]);

impl AxisPerm {
    pub const IDENTITY: AxisPerm = AxisPerm([0, 1, 2]);

    pub fn apply(&self, old: [f64; 3]) -> [f64; 3] {
        [old[self.0[0]], old[self.0[1]], old[self.0[2]]]
    }

    /// `self` after `first`: apply `first` to the original labels, then `self`.
    pub fn after(&self, first: &AxisPerm) -> AxisPerm {
        AxisPerm([first.0[self.0[0]], first.0[self.0[1]], first.0[self.0[2]]])
    }
}

/// Reduce a vacuum anisotropy parameter to the fundamental range `[0, 1)`.
///
/// Steps, each a relabeling of spatial axes up to constant coordinate
/// rescalings that are not tracked:
/// `K < 0` maps to `-K` with axes y, z swapped; `1 < K <= 3` maps to
/// `(3-K)/(1+K)` with axes x, y swapped; `K > 3` maps to `(K-3)/(1+K)`
/// with the cyclic relabeling (new x, y, z carry old y, z, x).
pub fn normalize_k(k: f64) -> Result<(f64, AxisPerm), GeometryError> {
    if (k.abs() - 1.0).abs() < 1e-14 {
        return Err(GeometryError::ExcludedK(k));
    }
    let (k, perm) = if k < 0.0 {
        (-k, AxisPerm([0, 2, 1]))
    } else {
        (k, AxisPerm::IDENTITY)
    };
    if k < 1.0 {
        return Ok((k, perm));
    }
    let (k, step) = if k <= 3.0 {
        ((3.0 - k) / (1.0 + k), AxisPerm([1, 0, 2]))
    } else {
        ((k - 3.0) / (1.0 + k), AxisPerm([1, 2, 0]))
    };
    debug_assert!((0.0..1.0).contains(&k));
    Ok((k, step.after(&perm)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn exponents_match_closed_forms() {
        // Hand-evaluated triples; K = 0.5 gives the exact rationals
        // (-3/13, 4/13, 12/13).
        let p = exponents_from_k(0.0, 0.0).unwrap();
        assert_relative_eq!(p[0], -1.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(p[1], 2.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(p[2], 2.0 / 3.0, max_relative = 1e-15);

        let p = exponents_from_k(0.5, 0.0).unwrap();
        assert_relative_eq!(p[0], -3.0 / 13.0, max_relative = 1e-14);
        assert_relative_eq!(p[1], 4.0 / 13.0, max_relative = 1e-14);
        assert_relative_eq!(p[2], 12.0 / 13.0, max_relative = 1e-14);

        // Flat limit: geometry stays valid even though |K| = 1 is excluded
        // from the range reduction and from the fluid stability window.
        let p = exponents_from_k(1.0, 0.0).unwrap();
        assert_relative_eq!(p[0], 0.0, epsilon = 1e-15);
        assert_relative_eq!(p[1], 0.0, epsilon = 1e-15);
        assert_relative_eq!(p[2], 1.0, epsilon = 1e-15);
    }

    #[test]
    fn isotropic_scalar_field_corner() {
        let bg = KasnerBackground::new(3f64.sqrt(), A_MAX).unwrap();
        assert!(bg.l.abs() < 1e-7);
        for pi in bg.p {
            assert_relative_eq!(pi, 1.0 / 3.0, epsilon = 1e-7);
        }
    }

    #[test]
    fn inadmissible_pair_is_rejected() {
        // A = 0.5 admits K^2 in about [0.35, 25.65]; K = 6 lies outside.
        let err = KasnerBackground::new(6.0, 0.5).unwrap_err();
        match err {
            GeometryError::InadmissibleAnisotropy { lo, hi, .. } => {
                assert!(lo > 0.3 && lo < 0.4);
                assert!(hi > 25.0 && hi < 26.0);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn normalization_frozen_cases() {
        let (k, perm) = normalize_k(2.0).unwrap();
        assert_relative_eq!(k, 1.0 / 3.0, max_relative = 1e-15);
        assert_eq!(perm, AxisPerm([1, 0, 2]));

        let (k, perm) = normalize_k(5.0).unwrap();
        assert_relative_eq!(k, 1.0 / 3.0, max_relative = 1e-15);
        assert_eq!(perm, AxisPerm([1, 2, 0]));

        let (k, perm) = normalize_k(-0.5).unwrap();
        assert_relative_eq!(k, 0.5, max_relative = 1e-15);
        assert_eq!(perm, AxisPerm([0, 2, 1]));

        assert!(normalize_k(1.0).is_err());
        assert!(normalize_k(-1.0).is_err());
    }

    #[test]
    fn normalization_is_idempotent_and_preserves_exponents() {
        for &k0 in &[-7.25, -2.0, -0.9, 0.0, 0.3, 0.999, 1.5, 2.8, 3.0, 4.2, 40.0] {
            let (k1, perm) = normalize_k(k0).unwrap();
            assert!((0.0..1.0).contains(&k1), "k0 = {k0} gave {k1}");
            let (k2, perm2) = normalize_k(k1).unwrap();
            assert_eq!(k1, k2);
            assert_eq!(perm2, AxisPerm::IDENTITY);

            let old = exponents_from_k(k0, 0.0).unwrap();
            let new = exponents_from_k(k1, 0.0).unwrap();
            let relabeled = perm.apply(old);
            for i in 0..3 {
                assert_relative_eq!(relabeled[i], new[i], epsilon = 1e-13);
            }
        }
    }
}
