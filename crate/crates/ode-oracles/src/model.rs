//! The scalar model equation `d_t u = (b/t) u + F(t)` on `t > 0` and its
//! explicit solution
//!
//! ```text
//! u(t) = t^b ( t0^-b u0 + int_t0^t s^-b F(s) ds )
//! ```
//!
//! anchored either at a regular time `t0 > 0` or, when `s^-b F(s)` is
//! integrable at zero, at the singular time itself through the limit
//! `u(t) t^-b -> data`.  The integral term is evaluated by adaptive
//! quadrature; anchors at zero route through the power-substitution tail
//! rule, which never samples the endpoint.  The singular axis of the
//! fluid problem is negative, so callers converting from that convention
//! pass `|t|`; internally the tail rule runs on the mirrored axis.

use grid_solver::fit_power_law;
use lot_builder::{adaptive_integral, singular_tail};

use crate::OracleError;

/// Where the free constant of the general solution is pinned.
#[derive(Debug, Clone, Copy)]
pub enum Anchor {
    /// Value `u0` at a regular time `t0 > 0`.
    Backward { t0: f64, u0: f64 },
    /// Limit of `t^-b u(t)` as `t -> 0`.
    Asymptotic { data: f64 },
}

/// A fully specified solution of the model equation.
pub struct ModelSolution<F: Fn(f64) -> f64> {
    pub b: f64,
    pub source: F,
    pub anchor: Anchor,
    /// Relative quadrature tolerance for the integral term.
    pub quad_tol: f64,
}

/// Fraction of the fitted exponent margin used as the quadrature power
/// floor; shaved so fit noise cannot overstate the admissible power.
const FLOOR_SHAVE: f64 = 0.9;

/// Sampled sources with a smaller exponent margin than this are treated
/// as non-integrable rather than trusted to a borderline quadrature.
const MIN_MARGIN: f64 = 0.02;

impl<F: Fn(f64) -> f64> ModelSolution<F> {
    pub fn backward(b: f64, source: F, t0: f64, u0: f64) -> Result<Self, OracleError> {
        if !(t0 > 0.0) {
            return Err(OracleError::BadAnchorTime(t0));
        }
        Ok(Self { b, source, anchor: Anchor::Backward { t0, u0 }, quad_tol: 1e-10 })
    }

    pub fn asymptotic(b: f64, source: F, data: f64) -> Self {
        Self { b, source, anchor: Anchor::Asymptotic { data }, quad_tol: 1e-10 }
    }

    /// Estimate how much room the source leaves above the integrability
    /// threshold: samples `|F|` on twelve log-spaced times in
    /// `[1e-6, 1e-2]`, fits a power law, and returns the fitted exponent
    /// minus `b - 1`.  An identically vanishing source reports infinite
    /// margin.  The margin must be positive for `s^-b F(s)` to be
    /// integrable at zero; anything below a small guard is rejected.
    pub fn source_margin(&self) -> Result<f64, OracleError> {
        let n = 12;
        let mut ts = Vec::with_capacity(n);
        let mut vals = Vec::with_capacity(n);
        let mut peak = 0.0f64;
        for k in 0..n {
            let t = 1e-6 * 10f64.powf(4.0 * k as f64 / (n - 1) as f64);
            let v = (self.source)(t).abs();
            peak = peak.max(v);
            if v > 1e-250 {
                ts.push(t);
                vals.push(v);
            }
        }
        if peak <= 1e-250 {
            return Ok(f64::INFINITY);
        }
        if vals.len() < 8 {
            return Err(OracleError::SourceIrregular("fewer than 8 nonzero samples"));
        }
        let fit = fit_power_law(&ts, &vals)?;
        if fit.r_squared < 0.97 {
            return Err(OracleError::SourceIrregular("samples stray from a power law"));
        }
        let margin = fit.exponent - (self.b - 1.0);
        if margin < MIN_MARGIN {
            return Err(OracleError::SourceNotIntegrable { got: fit.exponent, need: self.b - 1.0 });
        }
        Ok(margin)
    }

    /// `int_0^t s^-b F(s) ds` through the mirrored-axis tail rule.
    fn integral_from_zero(&self, t: f64) -> Result<f64, OracleError> {
        let margin = self.source_margin()?;
        if margin.is_infinite() {
            return Ok(0.0);
        }
        let floor = (FLOOR_SHAVE * margin).clamp(MIN_MARGIN, 1.0);
        let b = self.b;
        let mut g = |sigma: f64| {
            let s = -sigma;
            s.powf(-b) * (self.source)(s)
        };
        Ok(singular_tail(&mut g, -t, floor, self.quad_tol)?)
    }

    /// The limit of `t^-b u(t)` at zero.  For a regular anchor this
    /// requires an integrable source and costs one tail quadrature.
    pub fn asymptotic_data(&self) -> Result<f64, OracleError> {
        match self.anchor {
            Anchor::Asymptotic { data } => Ok(data),
            Anchor::Backward { t0, u0 } => {
                Ok(t0.powf(-self.b) * u0 - self.integral_from_zero(t0)?)
            }
        }
    }

    /// Evaluate the solution at `t > 0`.
    pub fn evaluate(&self, t: f64) -> Result<f64, OracleError> {
        if !(t > 0.0) {
            return Err(OracleError::BadModelTime(t));
        }
        match self.anchor {
            Anchor::Backward { t0, u0 } => {
                let b = self.b;
                let integral = if t == t0 {
                    0.0
                } else {
                    let mut f = |s: f64| s.powf(-b) * (self.source)(s);
                    adaptive_integral(&mut f, t0, t, self.quad_tol)?
                };
                Ok(t.powf(b) * (t0.powf(-b) * u0 + integral))
            }
            Anchor::Asymptotic { data } => {
                Ok(t.powf(self.b) * (data + self.integral_from_zero(t)?))
            }
        }
    }

    /// The pure power `t^b` times the asymptotic data; the part of the
    /// solution parametrised by the data alone.
    pub fn leading_term(&self, t: f64) -> Result<f64, OracleError> {
        Ok(t.powf(self.b) * self.asymptotic_data()?)
    }

    /// Solution minus leading term; decays faster than `t^b` by the
    /// source margin.
    pub fn remainder(&self, t: f64) -> Result<f64, OracleError> {
        Ok(self.evaluate(t)? - self.leading_term(t)?)
    }
}

/// Evaluate a model solution at one time.
pub fn model_exact<F: Fn(f64) -> f64>(spec: &ModelSolution<F>, t: f64) -> Result<f64, OracleError> {
    spec.evaluate(t)
}

/// A fixed-step integration record: times and values, including both
/// endpoints.
#[derive(Debug, Clone)]
pub struct ModelRun {
    pub ts: Vec<f64>,
    pub us: Vec<f64>,
}

impl ModelRun {
    pub fn final_value(&self) -> f64 {
        *self.us.last().expect("runs hold at least the start level")
    }
}

/// Classical RK4 on the model equation in logarithmic time,
/// `du/dtau = b u + t F(t)` with `t = e^tau`, marching from
/// `(t_start, u_start)` to `t_end` in either direction with uniform
/// steps of size at most `dtau`.  Fixed-step on purpose: convergence
/// studies need the step size under caller control.
pub fn rk4_model<F: Fn(f64) -> f64>(
    b: f64,
    source: &F,
    t_start: f64,
    u_start: f64,
    t_end: f64,
    dtau: f64,
) -> Result<ModelRun, OracleError> {
    if !(t_start > 0.0) {
        return Err(OracleError::BadModelTime(t_start));
    }
    if !(t_end > 0.0) {
        return Err(OracleError::BadModelTime(t_end));
    }
    assert!(dtau > 0.0, "step size must be positive");
    let tau0 = t_start.ln();
    let tau1 = t_end.ln();
    let n = (((tau1 - tau0).abs() / dtau).ceil() as usize).max(1);
    let h = (tau1 - tau0) / n as f64;
    let rhs = |tau: f64, u: f64| {
        let t = tau.exp();
        b * u + t * source(t)
    };
    let mut ts = Vec::with_capacity(n + 1);
    let mut us = Vec::with_capacity(n + 1);
    let mut u = u_start;
    ts.push(t_start);
    us.push(u);
    for k in 0..n {
        let tau = tau0 + h * k as f64;
        let k1 = rhs(tau, u);
        let k2 = rhs(tau + 0.5 * h, u + 0.5 * h * k1);
        let k3 = rhs(tau + 0.5 * h, u + 0.5 * h * k2);
        let k4 = rhs(tau + h, u + h * k3);
        u += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        let tau_next = tau0 + h * (k + 1) as f64;
        ts.push(tau_next.exp());
        us.push(u);
    }
    Ok(ModelRun { ts, us })
}
