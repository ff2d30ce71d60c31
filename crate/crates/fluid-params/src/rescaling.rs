use crate::{FluidParameters, ParamError};

/// A diagonal power-law rescaling `diag[i] = (-t)^{exps[i]}` at a fixed
/// negative time, with the exponents kept so the exact time derivative
/// `d/dt diag[i] = (exps[i] / t) diag[i]` stays available.
#[derive(Debug, Clone, Copy)]
pub struct Rescaling {
    pub t: f64,
    pub exps: [f64; 4],
    pub diag: [f64; 4],
}

impl Rescaling {
    fn new(t: f64, exps: [f64; 4]) -> Result<Self, ParamError> {
        if !(t < 0.0) {
            return Err(ParamError::TimeNotNegative(t));
        }
        let diag = exps.map(|e| (-t).powf(e));
        Ok(Self { t, exps, diag })
    }

    pub fn apply(&self, v: [f64; 4]) -> [f64; 4] {
        [
            self.diag[0] * v[0],
            self.diag[1] * v[1],
            self.diag[2] * v[2],
            self.diag[3] * v[3],
        ]
    }

    pub fn apply_inv(&self, v: [f64; 4]) -> [f64; 4] {
        [
            v[0] / self.diag[0],
            v[1] / self.diag[1],
            v[2] / self.diag[2],
            v[3] / self.diag[3],
        ]
    }

    /// Exact derivative of each diagonal entry with respect to t.
    pub fn ddt(&self) -> [f64; 4] {
        let mut d = self.diag;
        for i in 0..4 {
            d[i] *= self.exps[i] / self.t;
        }
        d
    }
}

/// First rescaling: absorbs the raw singular growth of the fluid vector.
/// `diag = ((-t)^G1, (-t)^G1, (-t)^G2, (-t)^G3)`.
pub fn rescaling_t(t: f64, params: &FluidParameters) -> Result<Rescaling, ParamError> {
    Rescaling::new(t, params.component_rates())
}

/// Second rescaling: normalizes the rescaled vector so every component
/// carries a finite nonzero limit.  `diag = (1, (-t)^-G1, (-t)^-G2, (-t)^-G3)`.
pub fn rescaling_t_hat(t: f64, params: &FluidParameters) -> Result<Rescaling, ParamError> {
    let [g1, g2, g3] = params.rates;
    Rescaling::new(t, [0.0, -g1, -g2, -g3])
}
