//! Quantitative checks on a synthesized function: shape error, zeros and
//! local frequency, amplitude growth, spectral contributions and energy.

mod amplitude;
mod dominance;
mod energy;
mod zeros;

pub use amplitude::{amplitude_growth, amplitude_growth_with, search_horizon, AmplitudeReport};
pub use dominance::{spectrum_dominance, Contribution, DominanceReport};
pub use energy::{energy_parseval_check, energy_tail_bound, Authority, ParsevalReport};
pub use zeros::{
    find_zeros, local_frequency, superoscillation_certificate, Certificate, LocalFrequency,
};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polynomial::Interval;
use crate::quadrature::{integrate_segments, QuadConfig};
use crate::synthesis::SuperoscSpec;

/// `(∫_{-a}^{a} (f - p)^2 dt)^(1/2)` with its quadrature bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorReport {
    pub l2_error: f64,
    /// Propagated from the panel-doubling estimate of the squared integral.
    pub quadrature_estimate_error: f64,
    pub interval: Interval,
    pub panels_used: usize,
    /// False when the quadrature did not converge or its error estimate is
    /// not below 1% of the result.
    pub reliable: bool,
}

impl ErrorReport {
    /// Whether the shape error is within a user threshold.
    pub fn within(&self, epsilon: f64) -> bool {
        self.reliable && self.l2_error <= epsilon
    }
}

pub fn l2_error(spec: &SuperoscSpec) -> ErrorReport {
    l2_error_with(spec, &QuadConfig::default())
}

pub fn l2_error_with(spec: &SuperoscSpec, cfg: &QuadConfig) -> ErrorReport {
    let a = spec.interval().half_width();
    let d = spec.dilation();
    let env = spec.envelope();
    let poly = spec.poly();
    // f - p = p (e - 1); the same quantity, without forming f first
    let r = integrate_segments(
        |t| {
            let v = poly.eval(t) * (env.eval_time(t / d) - 1.0);
            v * v
        },
        &[-a, 0.0, a],
        cfg,
    );
    let squared = r.value.max(0.0);
    let l2 = squared.sqrt();
    let err = if l2 > 0.0 {
        r.error_estimate / (2.0 * l2)
    } else {
        r.error_estimate.sqrt()
    };
    ErrorReport {
        l2_error: l2,
        quadrature_estimate_error: err,
        interval: spec.interval(),
        panels_used: r.panels_used,
        reliable: r.converged && (err < 0.01 * l2 || err == 0.0),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepPoint {
    #[serde(rename = "D")]
    pub dilation: f64,
    pub report: ErrorReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub points: Vec<SweepPoint>,
    /// Least-squares slope of `ln(error)` against `ln(D)`; `None` with fewer
    /// than two distinct dilations or a zero error.
    pub slope: Option<f64>,
}

impl SweepReport {
    pub fn errors(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.report.l2_error).collect()
    }

    pub fn is_strictly_decreasing(&self) -> bool {
        self.points
            .windows(2)
            .all(|w| w[1].report.l2_error < w[0].report.l2_error)
    }
}

pub fn dilation_sweep(spec: &SuperoscSpec, dilations: &[f64], cfg: &QuadConfig) -> Result<SweepReport> {
    let valid = !dilations.is_empty()
        && dilations.iter().all(|d| d.is_finite() && *d >= 1.0)
        && dilations.windows(2).all(|w| w[0] <= w[1]);
    if !valid {
        return Err(Error::InvalidDilations);
    }
    let points = dilations
        .par_iter()
        .map(|&d| {
            let s = spec.with_dilation(d)?;
            Ok(SweepPoint {
                dilation: d,
                report: l2_error_with(&s, cfg),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let slope = log_log_slope(&points);
    Ok(SweepReport { points, slope })
}

fn log_log_slope(points: &[SweepPoint]) -> Option<f64> {
    if points.iter().any(|p| !(p.report.l2_error > 0.0)) {
        return None;
    }
    let xs: Vec<f64> = points.iter().map(|p| p.dilation.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.report.l2_error.ln()).collect();
    least_squares_slope(&xs, &ys)
}

/// Slope of the least-squares line through `(x, y)`.
pub fn least_squares_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if xs.len() < 2 || sxx == 0.0 {
        return None;
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    Some(sxy / sxx)
}

/// Everything above for one spec.
#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub error: ErrorReport,
    /// Zeros on `[-1.01a, 1.01a]`.
    pub zeros: Vec<f64>,
    pub local_frequency: Vec<LocalFrequency>,
    pub certificate: Option<Certificate>,
    pub amplitude: AmplitudeReport,
    pub dominance: DominanceReport,
    pub parseval: ParsevalReport,
}

pub fn analyze(spec: &SuperoscSpec, cfg: &QuadConfig) -> Result<AnalysisReport> {
    let a = spec.interval().half_width();
    // same window as the certificate, so zeros on the interval ends count
    let zeros = find_zeros(spec, -1.01 * a, 1.01 * a);
    let local_frequency = local_frequency(spec, -a, a).unwrap_or_default();
    Ok(AnalysisReport {
        error: l2_error_with(spec, cfg),
        zeros,
        local_frequency,
        certificate: superoscillation_certificate(spec).ok(),
        amplitude: amplitude_growth(spec),
        dominance: spectrum_dominance(spec, cfg)?,
        parseval: energy_parseval_check(spec, cfg),
    })
}
