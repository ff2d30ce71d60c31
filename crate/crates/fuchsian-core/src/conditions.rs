use serde::{Deserialize, Serialize};

/// One scalar inequality with its measured value and threshold.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConditionCheck {
    pub name: String,
    /// Measured left-hand side.
    pub value: f64,
    /// The check passes when `value > threshold` (strict).
    pub threshold: f64,
    pub pass: bool,
    /// Margin `value - threshold`, for reporting.
    pub margin: f64,
}

impl ConditionCheck {
    fn strict(name: &str, value: f64, threshold: f64) -> Self {
        Self {
            name: name.to_string(),
            value,
            threshold,
            pass: value > threshold,
            margin: value - threshold,
        }
    }
}

/// Outcome of a family of structural condition checks.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConditionReport {
    pub checks: Vec<ConditionCheck>,
    pub pass: bool,
}

impl ConditionReport {
    fn from_checks(checks: Vec<ConditionCheck>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        Self { checks, pass }
    }
}

/// Measured quantities entering the forward (existence) energy estimate.
///
/// The spectral quantities are suprema over sampled states in the window;
/// the smallness integral is `int_[T0,0) |s|^(mu - 1) ||F(s)|| ds` or an
/// upper bound for it.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ForwardInputs {
    /// Energy weight.
    pub mu: f64,
    /// Supremum of the top generalized eigenvalue of `(Bc, B0)`.
    pub lambda_max: f64,
    /// Sandwich constant: `B0 >= (1/gamma1) I` over the window.
    pub gamma1: f64,
    /// Aggregate first-order coefficient bound (divergence and Lipschitz
    /// contributions).
    pub beta: f64,
    /// Derivative-loss constant from commutators (`0` for coefficients
    /// with frozen spatial profiles).
    pub deriv_loss: f64,
    /// Sobolev order of the energy.
    pub sobolev_k: usize,
    /// Value of the weighted source integral.
    pub smallness_integral: f64,
    /// Admissible bound for the source integral.
    pub smallness_bound: f64,
}

/// Energy-estimate conditions for existence of a solution taking the
/// prescribed limit at `t = 0`:
///
/// 1. spectral gap `eta = mu - lambda_max > 0`,
/// 2. coercivity after derivative losses
///    `2 eta - gamma1 beta - k (k+1) deriv_loss gamma1 > 0`,
/// 3. weighted source integral below its admissible bound.
pub fn check_forward_conditions(inp: &ForwardInputs) -> ConditionReport {
    let eta = inp.mu - inp.lambda_max;
    let k = inp.sobolev_k as f64;
    let coercive = 2.0 * eta - inp.gamma1 * inp.beta - k * (k + 1.0) * inp.deriv_loss * inp.gamma1;
    ConditionReport::from_checks(vec![
        ConditionCheck::strict("spectral_gap_eta", eta, 0.0),
        ConditionCheck::strict("coercivity_after_losses", coercive, 0.0),
        ConditionCheck::strict(
            "source_smallness",
            inp.smallness_bound - inp.smallness_integral,
            0.0,
        ),
    ])
}

/// Measured constants entering the backward (uniqueness) sandwich.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct BackwardConstants {
    /// Spectral shift of the zeroth-order term; uniqueness needs it
    /// strictly positive.
    pub kappa: f64,
    /// Sandwich constant: `B0 >= (1/gamma1) I`.
    pub gamma1: f64,
    /// Infimum of `lambda_min(B0)` over the sampled window.
    pub lambda_min_b0: f64,
    /// Infimum of the generalized eigenvalue `lambda_min(Bc~, B0)`.
    pub gen_eig_min: f64,
    /// Sum of the odd first-order coefficient bounds.
    pub beta_odd_sum: f64,
    /// Leading first-order coefficient bound.
    pub beta1: f64,
    /// Divergence-type constant.
    pub lambda3: f64,
    /// Derivative-loss constant.
    pub deriv_loss: f64,
    /// Sobolev order of the energy.
    pub sobolev_k: usize,
}

/// Uniqueness conditions for the singular initial value problem:
///
/// 1. `kappa > 0`,
/// 2. lower sandwich `lambda_min(B0) >= 1/gamma1`,
/// 3. upper sandwich `lambda_min(Bc~, B0) >= kappa`,
/// 4. `kappa > (gamma1/2) (beta_odd_sum + 2 lambda3)`,
/// 5. `kappa > (gamma1/2) (beta1 + 2 k (k+1) deriv_loss)`.
pub fn check_backward_kappa(c: &BackwardConstants) -> ConditionReport {
    let k = c.sobolev_k as f64;
    ConditionReport::from_checks(vec![
        ConditionCheck::strict("kappa_positive", c.kappa, 0.0),
        ConditionCheck::strict("lower_sandwich", c.lambda_min_b0, 1.0 / c.gamma1),
        ConditionCheck::strict("upper_sandwich", c.gen_eig_min, c.kappa),
        ConditionCheck::strict(
            "kappa_vs_first_order",
            c.kappa,
            0.5 * c.gamma1 * (c.beta_odd_sum + 2.0 * c.lambda3),
        ),
        ConditionCheck::strict(
            "kappa_vs_derivative_losses",
            c.kappa,
            0.5 * c.gamma1 * (c.beta1 + 2.0 * k * (k + 1.0) * c.deriv_loss),
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forward_report_flags_each_failure() {
        let mut inp = ForwardInputs {
            mu: 0.9,
            lambda_max: 0.85,
            gamma1: 1.2,
            beta: 0.01,
            deriv_loss: 0.0,
            sobolev_k: 2,
            smallness_integral: 0.3,
            smallness_bound: 1.0,
        };
        assert!(check_forward_conditions(&inp).pass);
        inp.lambda_max = 0.95;
        let rep = check_forward_conditions(&inp);
        assert!(!rep.pass);
        assert!(!rep.checks[0].pass);
        assert!(!rep.checks[1].pass);
        assert!(rep.checks[2].pass);
    }

    #[test]
    fn backward_report_requires_a_positive_shift() {
        let mut c = BackwardConstants {
            kappa: 0.09,
            gamma1: 2.0,
            lambda_min_b0: 0.8,
            gen_eig_min: 0.095,
            beta_odd_sum: 0.01,
            beta1: 0.004,
            lambda3: 0.002,
            deriv_loss: 0.0,
            sobolev_k: 3,
        };
        assert!(check_backward_kappa(&c).pass);
        // Shift to zero: the spectral condition and the margin conditions
        // all collapse.
        c.kappa = 0.0;
        let rep = check_backward_kappa(&c);
        assert!(!rep.pass);
        assert!(!rep.checks[0].pass);
    }

    #[test]
    fn report_serializes() {
        let rep = check_forward_conditions(&ForwardInputs {
            mu: 1.0,
            lambda_max: 0.5,
            gamma1: 1.0,
            beta: 0.0,
            deriv_loss: 0.0,
            sobolev_k: 2,
            smallness_integral: 0.0,
            smallness_bound: 1.0,
        });
        let json = serde_json::to_string(&rep).unwrap();
        assert!(json.contains("spectral_gap_eta"));
    }
}
