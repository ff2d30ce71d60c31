//! Cross-validation of the polynomial production assembly against the
//! literal covariant route (symbol + Christoffel contraction + rescaling
//! sandwich).  The two routes share no simplification steps, so agreement
//! at near-machine precision exercises every algebraic identity the
//! production path is built on.

use euler_coefficients::{assemble_full, literal_principal, literal_zeroth, mat_vec4};
use fluid_params::FluidParameters;
use kasner_geometry::KasnerBackground;

fn cases() -> Vec<(FluidParameters, &'static str)> {
    let mut out = Vec::new();
    let v0 = KasnerBackground::vacuum(0.0).unwrap();
    out.push((FluidParameters::new(v0.clone(), 1.8).unwrap(), "k=0 stable"));
    out.push((FluidParameters::new(v0, 5.0 / 3.0).unwrap(), "k=0 borderline"));
    let v05 = KasnerBackground::vacuum(0.5).unwrap();
    out.push((FluidParameters::new(v05.clone(), 1.95).unwrap(), "k=0.5 stable"));
    out.push((FluidParameters::new(v05, 1.9).unwrap(), "k=0.5 unstable"));
    let sf = KasnerBackground::new(2.0, 0.5).unwrap();
    out.push((FluidParameters::new(sf, 1.7).unwrap(), "scalar field k=2"));
    let sf_neg = KasnerBackground::new(-2.0, 0.5).unwrap();
    out.push((FluidParameters::new(sf_neg, 1.7).unwrap(), "scalar field k=-2"));
    out
}

const TIMES: [f64; 4] = [-2.0, -0.9, -0.35, -0.1];
const STATE: [f64; 4] = [1.1, 0.21, -0.13, 0.08];

#[test]
fn principal_symbols_agree_between_routes() {
    for (params, label) in cases() {
        for &t in &TIMES {
            let produced = assemble_full(t, &STATE, &params);
            let literal = literal_principal(t, &STATE, &params);
            let prod = [
                &produced.b0,
                &produced.b_adv[0],
                &produced.b_adv[1],
                &produced.b_adv[2],
            ];
            for axis in 0..4 {
                let mut scale = 0.0f64;
                for r in 0..4 {
                    for c in 0..4 {
                        scale = scale.max(prod[axis][r][c].abs());
                    }
                }
                for r in 0..4 {
                    for c in 0..4 {
                        let diff = (prod[axis][r][c] - literal[axis][r][c]).abs();
                        assert!(
                            diff <= 1e-12 * scale.max(1.0),
                            "{label}: axis {axis} entry ({r},{c}) at t={t}: \
                             {} vs {} (diff {diff:.3e})",
                            prod[axis][r][c],
                            literal[axis][r][c]
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn zeroth_order_closed_forms_agree_with_literal_route() {
    for (params, label) in cases() {
        for &t in &TIMES {
            let produced = assemble_full(t, &STATE, &params);
            let bc_u = mat_vec4(&produced.bc, &STATE);
            let n_lit = literal_zeroth(t, &STATE, &params);
            let mut scale = 1.0f64;
            for r in 0..4 {
                scale = scale.max(n_lit[r].abs());
            }
            for r in 0..4 {
                // Production right-hand side must equal -N exactly.
                let rhs = bc_u[r] / t + produced.g[r];
                let diff = (rhs + n_lit[r]).abs();
                assert!(
                    diff <= 1e-11 * scale,
                    "{label}: zeroth-order component {r} at t={t}: \
                     rhs={rhs} vs -N={} (diff {diff:.3e})",
                    -n_lit[r]
                );
            }
        }
    }
}

#[test]
fn invariant_norm_factorization_matches_metric_route() {
    use euler_coefficients::vv_from_scaled;
    use fluid_params::rescaling_t;
    use kasner_geometry::metric_christoffels;
    for (params, label) in cases() {
        for &t in &TIMES {
            let direct = vv_from_scaled(t, &STATE, &params);
            let v = rescaling_t(t, &params).unwrap().apply(STATE);
            let (metric, _) = metric_christoffels(t, &params.bg).unwrap();
            let via_metric = metric.inner(&v, &v);
            let diff = (direct - via_metric).abs();
            assert!(
                diff <= 1e-12 * direct.abs().max(1e-30),
                "{label}: V.V at t={t}: {direct} vs {via_metric}"
            );
        }
    }
}
