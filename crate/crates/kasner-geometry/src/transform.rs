use crate::background::KasnerBackground;
use crate::GeometryError;

/// Which coordinate map to apply. Spatial directions carry the axis index
/// `0..3` (x, y, z).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    TimeToTilde,
    TildeToTime,
    SpaceToTilde(usize),
    TildeToSpace(usize),
}

/// Coordinate change between solver and tilde coordinates.
///
/// Time: `t~ = (4/(K^2+3)) (-t)^{(K^2+3)/4}` for `t < 0`; strictly
/// decreasing in `t`, so `t -> 0^-` corresponds to `t~ -> 0^+`.
/// Space: `x~_i = ((K^2+3)/4)^{p_i} x_i`.
pub fn coordinate_transform(
    value: f64,
    direction: Direction,
    bg: &KasnerBackground,
) -> Result<f64, GeometryError> {
    let s = (bg.k * bg.k + 3.0) / 4.0;
    match direction {
        Direction::TimeToTilde => {
            if !(value < 0.0) {
                return Err(GeometryError::TimeNotNegative(value));
            }
            Ok((-value).powf(s) / s)
        }
        Direction::TildeToTime => {
            if !(value > 0.0) {
                return Err(GeometryError::TildeTimeNotPositive(value));
            }
            Ok(-(s * value).powf(1.0 / s))
        }
        Direction::SpaceToTilde(axis) => {
            let p = *bg.p.get(axis).ok_or(GeometryError::AxisOutOfRange(axis))?;
            Ok(s.powf(p) * value)
        }
        Direction::TildeToSpace(axis) => {
            let p = *bg.p.get(axis).ok_or(GeometryError::AxisOutOfRange(axis))?;
            Ok(s.powf(-p) * value)
        }
    }
}

/// `dt~/dt = -(-t)^{(K^2-1)/4}`; negative because the time orientation
/// flips between the two charts.
pub fn dttilde_dt(t: f64, bg: &KasnerBackground) -> Result<f64, GeometryError> {
    if !(t < 0.0) {
        return Err(GeometryError::TimeNotNegative(t));
    }
    Ok(-(-t).powf((bg.k * bg.k - 1.0) / 4.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn frozen_time_map() {
        // K = 0, t = -1: t~ = 4/3.
        let bg = KasnerBackground::vacuum(0.0).unwrap();
        let tt = coordinate_transform(-1.0, Direction::TimeToTilde, &bg).unwrap();
        assert_relative_eq!(tt, 4.0 / 3.0, max_relative = 1e-15);
    }

    #[test]
    fn roundtrips_and_monotonicity() {
        let bg = KasnerBackground::vacuum(0.6).unwrap();
        let mut prev = f64::INFINITY;
        for &t in &[-3.0, -1.0, -0.5, -0.01, -1e-6] {
            let tt = coordinate_transform(t, Direction::TimeToTilde, &bg).unwrap();
            assert!(tt > 0.0 && tt < prev, "time map must be decreasing");
            prev = tt;
            let back = coordinate_transform(tt, Direction::TildeToTime, &bg).unwrap();
            assert_relative_eq!(back, t, max_relative = 1e-13);
        }
        for axis in 0..3 {
            let x = 1.7;
            let xt = coordinate_transform(x, Direction::SpaceToTilde(axis), &bg).unwrap();
            let back = coordinate_transform(xt, Direction::TildeToSpace(axis), &bg).unwrap();
            assert_relative_eq!(back, x, max_relative = 1e-15);
        }
    }

    #[test]
    fn time_derivative_matches_difference_quotient() {
        let bg = KasnerBackground::vacuum(0.4).unwrap();
        let t = -0.3;
        let h = 1e-7;
        let fp = coordinate_transform(t + h, Direction::TimeToTilde, &bg).unwrap();
        let fm = coordinate_transform(t - h, Direction::TimeToTilde, &bg).unwrap();
        let fd = (fp - fm) / (2.0 * h);
        assert_relative_eq!(dttilde_dt(t, &bg).unwrap(), fd, max_relative = 1e-8);
    }
}
