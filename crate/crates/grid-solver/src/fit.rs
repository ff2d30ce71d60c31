use serde::{Deserialize, Serialize};

use crate::SolverError;

/// Least-squares fit of `y ~ amplitude * x^exponent` in log-log space.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PowerLawFit {
    pub exponent: f64,
    pub amplitude: f64,
    pub r_squared: f64,
    pub n_points: usize,
}

/// Fit a power law through `(x, y)` samples.
///
/// Requirements: at least 8 samples, strictly positive finite data, and
/// at least one decade of spread in `x`; anything less does not pin an
/// exponent and is rejected rather than silently fit.
pub fn fit_power_law(x: &[f64], y: &[f64]) -> Result<PowerLawFit, SolverError> {
    if x.len() != y.len() {
        return Err(SolverError::BadFitData("x/y length mismatch"));
    }
    if x.len() < 8 {
        return Err(SolverError::TooFewPoints { need: 8, got: x.len() });
    }
    if x.iter().chain(y.iter()).any(|&v| !(v.is_finite() && v > 0.0)) {
        return Err(SolverError::BadFitData("nonpositive or non-finite sample"));
    }
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for &v in x {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if hi / lo < 10.0 {
        return Err(SolverError::SpanTooSmall(hi / lo));
    }

    let n = x.len() as f64;
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for i in 0..x.len() {
        let dx = lx[i] - mx;
        let dy = ly[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    let exponent = sxy / sxx;
    let intercept = my - exponent * mx;
    let r_squared = if syy > 0.0 { (sxy * sxy) / (sxx * syy) } else { 1.0 };
    Ok(PowerLawFit {
        exponent,
        amplitude: intercept.exp(),
        r_squared,
        n_points: x.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn recovers_an_exact_power_law() {
        let x: Vec<f64> = (0..12).map(|i| 1e-3 * 2.0f64.powi(i)).collect();
        let y: Vec<f64> = x.iter().map(|&v| 3.0 * v.powf(1.7)).collect();
        let fit = fit_power_law(&x, &y).unwrap();
        assert_relative_eq!(fit.exponent, 1.7, max_relative = 1e-12);
        assert_relative_eq!(fit.amplitude, 3.0, max_relative = 1e-10);
        assert!(fit.r_squared > 1.0 - 1e-12);
    }

    #[test]
    fn tolerates_small_multiplicative_noise() {
        let x: Vec<f64> = (0..16).map(|i| 1e-4 * 1.8f64.powi(i)).collect();
        let y: Vec<f64> = x
            .iter()
            .enumerate()
            .map(|(i, &v)| 0.7 * v.powf(-0.85) * (1.0 + 1e-3 * ((i % 5) as f64 - 2.0)))
            .collect();
        let fit = fit_power_law(&x, &y).unwrap();
        assert!((fit.exponent + 0.85).abs() < 1e-2);
    }

    #[test]
    fn rejects_thin_or_bad_samples() {
        let x: Vec<f64> = (0..10).map(|i| 1.0 + 0.01 * i as f64).collect();
        let y = vec![1.0; 10];
        assert!(matches!(fit_power_law(&x, &y), Err(SolverError::SpanTooSmall(_))));
        assert!(matches!(
            fit_power_law(&[1.0, 2.0], &[1.0, 2.0]),
            Err(SolverError::TooFewPoints { .. })
        ));
        let xneg: Vec<f64> = (0..12).map(|i| 1e-2 * 2.0f64.powi(i)).collect();
        let mut yneg = vec![1.0; 12];
        yneg[3] = 0.0;
        assert!(fit_power_law(&xneg, &yneg).is_err());
    }
}
