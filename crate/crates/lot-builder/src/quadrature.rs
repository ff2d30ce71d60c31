//! Gauss-Kronrod 7-15 quadrature with a power substitution for
//! endpoint-singular tails.  Node and weight tables are the standard
//! QUADPACK values; the abscissae are interior, so integrands may blow
//! up at interval endpoints as long as they stay integrable.

use crate::LotError;

/// Kronrod abscissae on [0, 1] (positive half; index 7 is the center).
pub const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

/// Gauss weights for the embedded 7-point rule (nodes 1, 3, 5, 7).
pub const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Kronrod weights matching `XGK`.
pub const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// One 15-point Kronrod panel on [a, b]: returns the Kronrod value and
/// the |Kronrod - Gauss| error estimate.
pub fn gk15_panel<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for k in 0..7 {
        let lo = f(c - h * XGK[k]);
        let hi = f(c + h * XGK[k]);
        kron += WGK[k] * (lo + hi);
        if k % 2 == 1 {
            gauss += WG[k / 2] * (lo + hi);
        }
    }
    (kron * h, (kron - gauss).abs() * h.abs())
}

pub(crate) const MAX_BISECTIONS: usize = 400;

/// Globally adaptive integral of `f` over [a, b] to a relative
/// tolerance, by bisecting the segment with the worst error estimate.
pub fn adaptive_integral<F: FnMut(f64) -> f64>(
    f: &mut F,
    a: f64,
    b: f64,
    rel_tol: f64,
) -> Result<f64, LotError> {
    let mut segs = vec![{
        let (v, e) = gk15_panel(f, a, b);
        (a, b, v, e)
    }];
    for _ in 0..MAX_BISECTIONS {
        let total: f64 = segs.iter().map(|s| s.2).sum();
        let err: f64 = segs.iter().map(|s| s.3).sum();
        if err <= rel_tol * total.abs().max(1e-300) {
            // Deterministic summation order, left to right.
            segs.sort_by(|x, y| x.0.total_cmp(&y.0));
            return Ok(segs.iter().map(|s| s.2).sum());
        }
        let worst = segs
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, _)| i)
            .unwrap();
        let (sa, sb, _, _) = segs.swap_remove(worst);
        let mid = 0.5 * (sa + sb);
        let (v1, e1) = gk15_panel(f, sa, mid);
        let (v2, e2) = gk15_panel(f, mid, sb);
        segs.push((sa, mid, v1, e1));
        segs.push((mid, sb, v2, e2));
    }
    Err(LotError::QuadratureStalled(MAX_BISECTIONS))
}

/// Integral of `f` over [t, 0) for `t < 0` when `f(s)` may grow like
/// `|s|^(g-1)` as `s -> 0` for some `g >= power_floor > 0`.  The
/// substitution `|s| = sigma^(1/power_floor)` turns the worst admissible
/// power into a bounded integrand; quadrature nodes never touch the
/// endpoint, so `f` is only evaluated at strictly negative times.
pub fn singular_tail<F: FnMut(f64) -> f64>(
    f: &mut F,
    t: f64,
    power_floor: f64,
    rel_tol: f64,
) -> Result<f64, LotError> {
    if !(power_floor > 0.0 && power_floor <= 1.0) {
        return Err(LotError::BadPowerFloor(power_floor));
    }
    if !(t < 0.0) {
        return Err(LotError::BadTimeBounds(t, 0.0));
    }
    let p = 1.0 / power_floor;
    let sigma_max = (-t).powf(power_floor);
    let mut g = |sigma: f64| f(-sigma.powf(p)) * p * sigma.powf(p - 1.0);
    adaptive_integral(&mut g, 0.0, sigma_max, rel_tol)
}
