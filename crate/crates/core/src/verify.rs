//! One-call verification of a spec against every invariant the library
//! can check, as a machine-readable report.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::analysis::{dilation_sweep, energy_parseval_check, l2_error_with, superoscillation_certificate};
use crate::envelope::EnvelopeFamily;
use crate::error::{Error, Result};
use crate::oracle::{forward_transform_point, inverse_transform_point};
use crate::quadrature::QuadConfig;
use crate::synthesis::{admissibility_check, Admissibility, SpecDraft, SuperoscSpec};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyConfig {
    pub quad: QuadConfig,
    pub oracle_samples: usize,
    /// Bound on `|inverse(F)(t) - f(t)| / max(1, |f(t)|)`.
    pub oracle_tol: f64,
    pub seed: u64,
    pub parseval_tol: f64,
    pub dilations: Vec<f64>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            quad: QuadConfig::default(),
            oracle_samples: 100,
            oracle_tol: 1e-8,
            seed: 20_140_101,
            parseval_tol: 1e-6,
            dilations: vec![1.0, 2.0, 4.0, 8.0, 16.0, 32.0],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub measured: Value,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, ok: bool, measured: Value, detail: impl Into<String>) -> Self {
        Check {
            name,
            status: if ok { Status::Pass } else { Status::Fail },
            measured,
            detail: detail.into(),
        }
    }

    fn skipped(name: &'static str, detail: impl Into<String>) -> Self {
        Check {
            name,
            status: Status::Skipped,
            measured: Value::Null,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub spec: SpecDraft,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail).collect()
    }
}

pub const CHECK_NAMES: [&str; 8] = [
    "admissibility",
    "oracle_equivalence",
    "breakpoint_continuity",
    "parseval",
    "bandlimit",
    "superoscillation_certificate",
    "monotone_sweep",
    "quadrature_convergence",
];

pub fn verify(spec: &SuperoscSpec, cfg: &VerifyConfig) -> VerifyReport {
    verify_draft(&spec.clone().into(), cfg).expect("a built spec is valid")
}

/// Verifies a spec that may be inadmissible; that case is reported as a
/// failed check, not an error. Other invalid parameters are errors.
pub fn verify_draft(draft: &SpecDraft, cfg: &VerifyConfig) -> Result<VerifyReport> {
    let admissibility = admissibility_check(&draft.poly, &draft.env);
    let adm_check = Check::new(
        "admissibility",
        admissibility.is_ok(),
        serde_json::to_value(admissibility).unwrap_or(Value::Null),
        match admissibility {
            Admissibility::Ok { .. } => "degree within the envelope's smoothness".to_string(),
            Admissibility::Violation { .. } => admissibility.into_result().unwrap_err().to_string(),
        },
    );
    let spec = match draft.clone().build() {
        Ok(s) => s,
        Err(Error::Inadmissible { .. }) => {
            let mut checks = vec![adm_check];
            checks.extend(
                CHECK_NAMES[1..]
                    .iter()
                    .map(|n| Check::skipped(n, "spec is not admissible")),
            );
            return Ok(VerifyReport {
                spec: draft.clone(),
                passed: false,
                checks,
            });
        }
        Err(e) => return Err(e),
    };

    let mut checks = vec![adm_check];
    checks.push(oracle_equivalence(&spec, cfg));
    checks.push(breakpoint_continuity(&spec));
    let parseval = energy_parseval_check(&spec, &cfg.quad);
    checks.push(parseval_check(&parseval, cfg));
    checks.push(bandlimit(&spec, cfg));
    checks.push(certificate(&spec));
    let (sweep_check, sweep_reliable) = monotone_sweep(&spec, cfg);
    checks.push(sweep_check);

    let l2 = l2_error_with(&spec, &cfg.quad);
    let mut unconverged = Vec::new();
    if !l2.reliable {
        unconverged.push("l2_error");
    }
    if !parseval.freq_converged {
        unconverged.push("parseval_frequency_side");
    }
    if !parseval.marginal && !parseval.time_converged {
        unconverged.push("parseval_time_side");
    }
    if !sweep_reliable {
        unconverged.push("dilation_sweep");
    }
    checks.push(Check::new(
        "quadrature_convergence",
        unconverged.is_empty(),
        json!({
            "abs_tol": cfg.quad.abs_tol,
            "rel_tol": cfg.quad.rel_tol,
            "unconverged": unconverged,
        }),
        if unconverged.is_empty() {
            "all reported integrals met their tolerance".to_string()
        } else {
            format!("did not converge: {}", unconverged.join(", "))
        },
    ));

    let passed = checks.iter().all(|c| c.status != Status::Fail);
    Ok(VerifyReport {
        spec: draft.clone(),
        passed,
        checks,
    })
}

fn oracle_equivalence(spec: &SuperoscSpec, cfg: &VerifyConfig) -> Check {
    let d = spec.dilation();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let ts: Vec<f64> = (0..cfg.oracle_samples)
        .map(|_| rng.gen_range(-10.0 * d..10.0 * d))
        .collect();
    let sp = spec.spectrum();
    let results: Vec<(f64, f64, bool, bool)> = ts
        .par_iter()
        .map(|&t| {
            let r = inverse_transform_point(&sp, t, &cfg.quad);
            let f = spec.eval(t);
            let scale = f.abs().max(1.0);
            let dev = (r.value.re - f).abs().max(r.value.im.abs()) / scale;
            // a rounding-floor stop still certifies agreement when its
            // estimate is below the threshold
            let certified = r.converged || r.error_estimate <= cfg.oracle_tol * scale;
            (t, dev, r.converged, certified)
        })
        .collect();
    let (worst_t, worst) = results
        .iter()
        .map(|&(t, dev, _, _)| (t, dev))
        .fold((0.0, 0.0), |a, b| if b.1 > a.1 { b } else { a });
    let unconverged = results.iter().filter(|r| !r.2).count();
    let uncertified = results.iter().filter(|r| !r.3).count();
    let ok = worst <= cfg.oracle_tol && uncertified == 0;
    Check::new(
        "oracle_equivalence",
        ok,
        json!({
            "samples": ts.len(),
            "max_deviation": worst,
            "worst_t": worst_t,
            "tolerance": cfg.oracle_tol,
            "unconverged": unconverged,
            "uncertified": uncertified,
        }),
        "inverse transform of the analytic spectrum vs direct evaluation, error relative to max(1, |f|)",
    )
}

fn breakpoint_continuity(spec: &SuperoscSpec) -> Check {
    let env = spec.envelope();
    match env.family() {
        EnvelopeFamily::SincPower { m } => {
            let p = env.piecewise().expect("sinc powers are piecewise");
            let count = p.breakpoints().len();
            let mut max_gap = 0.0f64;
            let mut top_jump = 0.0f64;
            for k in 1..count - 1 {
                for n in 0..m {
                    let (l, r) = p.one_sided(n, k);
                    let gap = (l - r).abs() / l.abs().max(r.abs()).max(1.0);
                    if n + 1 < m {
                        max_gap = max_gap.max(gap);
                    } else {
                        top_jump = top_jump.max((l - r).abs());
                    }
                }
            }
            Check::new(
                "breakpoint_continuity",
                max_gap <= 1e-9 && top_jump.is_finite(),
                json!({
                    "continuous_orders": m - 1,
                    "max_relative_gap": max_gap,
                    "top_order_max_jump": top_jump,
                }),
                format!("derivatives 0..={} continuous at every interior breakpoint; order {} has finite jumps", m - 2, m - 1),
            )
        }
        EnvelopeFamily::Bump => {
            let top = (spec.poly().degree() + 2).min(env.max_derivative());
            let mut max_edge = 0.0f64;
            for n in 0..=top {
                for w in [-PI, PI] {
                    max_edge = max_edge.max(env.eval_freq_deriv(n, w).unwrap_or(f64::NAN).abs());
                }
            }
            Check::new(
                "breakpoint_continuity",
                max_edge == 0.0,
                json!({ "orders_checked": top + 1, "max_edge_value": max_edge }),
                "smooth inside the support; all checked derivatives vanish at its ends",
            )
        }
    }
}

fn parseval_check(r: &crate::analysis::ParsevalReport, cfg: &VerifyConfig) -> Check {
    let measured = serde_json::to_value(r).unwrap_or(Value::Null);
    if r.marginal {
        // time side converges like 1/T; only consistency with the bound is
        // checkable
        let consistent = r.freq_converged
            && r.time_energy <= r.freq_energy * (1.0 + cfg.parseval_tol)
            && r.freq_energy - r.time_energy <= r.time_tail_bound;
        Check::new(
            "parseval",
            consistent,
            measured,
            "marginal decay: frequency side authoritative; time side consistent with its tail bound",
        )
    } else {
        Check::new(
            "parseval",
            r.agrees_within(cfg.parseval_tol),
            measured,
            format!("time and frequency energies agree within {}", cfg.parseval_tol),
        )
    }
}

fn bandlimit(spec: &SuperoscSpec, cfg: &VerifyConfig) -> Check {
    let sp = spec.spectrum();
    let edge = sp.support_half_width();
    let outside_max = (1..=200)
        .flat_map(|i| {
            let w = edge * (1.0 + i as f64 / 100.0);
            [sp.eval(w).norm(), sp.eval(-w).norm()]
        })
        .fold(0.0, f64::max);
    let inside_max = (0..=400)
        .map(|i| sp.eval(-edge + 2.0 * edge * i as f64 / 400.0).norm())
        .fold(0.0, f64::max);

    let omega = 1.5 * edge;
    let horizon = 1e4 * spec.dilation();
    let model = spec.tail_model(horizon);
    let tail = model.estimate(omega, horizon);
    let mut forward = Value::Null;
    let mut forward_ok = true;
    let mut detail = "analytic spectrum vanishes outside the support".to_string();
    if tail <= 1e-2 * inside_max {
        let fwd_cfg = QuadConfig {
            abs_tol: 1e-2 * inside_max,
            ..cfg.quad
        };
        match forward_transform_point(|t| spec.eval(t), omega, horizon, Some(&model), &fwd_cfg) {
            Ok(r) => {
                forward_ok = r.value.norm() <= r.error_estimate;
                forward = json!({
                    "omega": omega,
                    "horizon": horizon,
                    "magnitude": r.value.norm(),
                    "error_bound": r.error_estimate,
                });
                detail.push_str("; forward transform outside the band is consistent with 0");
            }
            Err(e) => {
                forward_ok = false;
                detail.push_str(&format!("; forward transform failed: {e}"));
            }
        }
    } else {
        detail.push_str("; forward spot check skipped, tail estimate not informative at this horizon");
    }
    Check::new(
        "bandlimit",
        outside_max == 0.0 && forward_ok,
        json!({
            "band_limit": edge,
            "max_outside": outside_max,
            "max_inside": inside_max,
            "forward": forward,
            "tail_estimate": tail,
        }),
        detail,
    )
}

fn certificate(spec: &SuperoscSpec) -> Check {
    match superoscillation_certificate(spec) {
        Ok(c) => Check::new(
            "superoscillation_certificate",
            c.superoscillates(),
            serde_json::to_value(&c).unwrap_or(Value::Null),
            format!("minimum local frequency is {:.6} times the band limit", c.ratio),
        ),
        Err(e) => Check::skipped("superoscillation_certificate", e.to_string()),
    }
}

fn monotone_sweep(spec: &SuperoscSpec, cfg: &VerifyConfig) -> (Check, bool) {
    match dilation_sweep(spec, &cfg.dilations, &cfg.quad) {
        Ok(sweep) => {
            let reliable = sweep.points.iter().all(|p| p.report.reliable);
            let ok = sweep.is_strictly_decreasing();
            (
                Check::new(
                    "monotone_sweep",
                    ok,
                    json!({
                        "dilations": cfg.dilations,
                        "errors": sweep.errors(),
                        "slope": sweep.slope,
                    }),
                    "shape error strictly decreases with the dilation",
                ),
                reliable,
            )
        }
        Err(e) => (Check::new("monotone_sweep", false, Value::Null, e.to_string()), false),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envelope::Envelope;
    use crate::polynomial::{Interval, Polynomial};
    use crate::presets;

    #[test]
    fn fig1_passes_everything() {
        let r = verify(&presets::fig1(), &VerifyConfig::default());
        assert!(r.passed, "{:#?}", r.failures());
        for name in CHECK_NAMES {
            assert_eq!(r.check(name).unwrap().status, Status::Pass, "{name}");
        }
    }

    #[test]
    fn inadmissible_spec_is_reported() {
        let draft = SpecDraft {
            poly: Polynomial::new(vec![0.0, 0.0, 0.0, 0.0, 1.0]).unwrap(),
            env: Envelope::sinc_power(4).unwrap(),
            dilation: 1.0,
            interval: Interval::new(0.1).unwrap(),
        };
        let r = verify_draft(&draft, &VerifyConfig::default()).unwrap();
        assert!(!r.passed);
        let adm = r.check("admissibility").unwrap();
        assert_eq!(adm.status, Status::Fail);
        assert_eq!(adm.measured["degree"], 4);
        assert_eq!(adm.measured["max_order"], 3);
        assert_eq!(r.check("parseval").unwrap().status, Status::Skipped);
    }

    #[test]
    fn bad_dilation_is_an_error() {
        let mut draft: SpecDraft = presets::fig1().into();
        draft.dilation = 0.5;
        assert!(verify_draft(&draft, &VerifyConfig::default()).is_err());
    }

    #[test]
    fn unattainable_tolerance_is_flagged() {
        let cfg = VerifyConfig {
            quad: QuadConfig::with_tol(1e-30),
            ..VerifyConfig::default()
        };
        let r = verify(&presets::fig1(), &cfg);
        assert!(!r.passed);
        let q = r.check("quadrature_convergence").unwrap();
        assert_eq!(q.status, Status::Fail);
        assert!(!q.measured["unconverged"].as_array().unwrap().is_empty());
    }

    #[test]
    fn constant_target_skips_the_certificate() {
        let r = verify(&presets::constant_sinc4(), &VerifyConfig::default());
        assert_eq!(r.check("superoscillation_certificate").unwrap().status, Status::Skipped);
        assert!(r.passed, "{:#?}", r.failures());
    }

    #[test]
    fn report_serializes() {
        let r = verify(&presets::fig1_sinc5(), &VerifyConfig::default());
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["checks"].as_array().unwrap().len(), CHECK_NAMES.len());
        assert_eq!(v["checks"][0]["status"], "pass");
        assert_eq!(v["spec"]["D"], 1.0);
    }
}
