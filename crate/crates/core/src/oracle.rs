//! Independent numerical Fourier machinery.
//!
//! The inverse direction integrates a compactly supported spectrum and is
//! the authoritative check on the analytic formulas. The forward direction
//! integrates a slowly decaying time signal over a finite horizon and only
//! reports a tail estimate; with the minimal smoothness margin the signal
//! decays like `1/|t|` and the truncated integral converges like `1/T`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::{gl32, integrate_segments, QuadConfig, QuadratureResult};
use crate::synthesis::Spectrum;

/// `(1/2pi) ∫ F(w) e^{iwt} dw`, split at the spectrum's breakpoints.
pub fn inverse_transform_point(
    spectrum: &Spectrum,
    t: f64,
    cfg: &QuadConfig,
) -> QuadratureResult<Complex64> {
    // fold w -> -w and integrate over the distance h = pi/D - |w| to the
    // support edge, with e^{iwt} = e^{i pi t / D} e^{-iht}
    let half = spectrum.support_half_width();
    let mut points: Vec<f64> = spectrum
        .breakpoints()
        .iter()
        .filter(|&&b| b > 0.0 && b < half)
        .map(|&b| half - b)
        .collect();
    points.push(0.0);
    points.push(half);
    points.sort_by(f64::total_cmp);
    let edge_phase = Complex64::new(0.0, half * t).exp();
    let mut r = integrate_segments(
        |h| {
            let phase = edge_phase * Complex64::new(0.0, -h * t).exp();
            spectrum.eval_from_edge(h, false) * phase + spectrum.eval_from_edge(h, true) * phase.conj()
        },
        &points,
        cfg,
    );
    r.value /= 2.0 * PI;
    r.error_estimate /= 2.0 * PI;
    r
}

/// Asymptotic description of a time signal beyond a horizon `T`:
/// `|f(t)| <= amplitude |t|^-decay` for `|t| >= T`, with the oscillation
/// concentrated at `frequencies` (angular, non-negative).
#[derive(Debug, Clone, PartialEq)]
pub struct TailModel {
    pub amplitude: f64,
    pub decay: f64,
    pub frequencies: Vec<f64>,
}

impl TailModel {
    /// Estimate of `|∫_{|t| > T} f(t) e^{-iwt} dt|`.
    ///
    /// Absolutely integrable tails get the L1 bound. When the signal's own
    /// oscillation frequencies are known, the leading integration-by-parts
    /// term is also used, doubled; it is finite only away from them.
    pub fn estimate(&self, omega: f64, horizon: f64) -> f64 {
        let l1 = if self.decay > 1.0 {
            2.0 * self.amplitude * horizon.powf(1.0 - self.decay) / (self.decay - 1.0)
        } else {
            f64::INFINITY
        };
        let detune = self
            .frequencies
            .iter()
            .map(|f| (omega.abs() - f).abs())
            .fold(f64::INFINITY, f64::min);
        // without known oscillation frequencies the term is unavailable
        let oscillatory = if detune > 0.0 && detune.is_finite() {
            4.0 * self.amplitude * horizon.powf(-self.decay) / detune
        } else {
            f64::INFINITY
        };
        l1.min(oscillatory)
    }
}

/// `∫_{-T}^{T} f(t) e^{-iwt} dt`.
///
/// The error estimate is the panel-halving difference plus the tail
/// estimate from `tail` (infinite when no model is given).
pub fn forward_transform_point(
    f: impl Fn(f64) -> f64,
    omega: f64,
    horizon: f64,
    tail: Option<&TailModel>,
    cfg: &QuadConfig,
) -> Result<QuadratureResult<Complex64>> {
    if !(horizon > 0.0) || !horizon.is_finite() {
        return Err(Error::InvalidParameter {
            name: "horizon",
            value: horizon,
            reason: "forward-transform horizon must be positive and finite",
        });
    }
    let max_freq = omega.abs()
        + tail
            .map(|m| m.frequencies.iter().copied().fold(0.0, f64::max))
            .unwrap_or(PI);
    let width = (20.0 / max_freq.max(1e-3)).min(2.0);
    let panels = ((2.0 * horizon / width).ceil() as usize).max(1);
    let rule = gl32();
    let g = |t: f64| f(t) * Complex64::new(0.0, -omega * t).exp();
    let coarse = rule.composite(-horizon, horizon, panels, g);
    let fine = rule.composite(-horizon, horizon, 2 * panels, g);
    let discretization = (fine - coarse).norm();
    let tail_estimate = tail.map_or(f64::INFINITY, |m| m.estimate(omega, horizon));
    let error_estimate = discretization + tail_estimate;
    Ok(QuadratureResult {
        value: fine,
        error_estimate,
        panels_used: 2 * panels,
        converged: error_estimate <= cfg.tolerance_for(fine.norm()),
    })
}

/// Central finite difference of order `n` at `x`, Richardson-extrapolated.
///
/// Uses steps `h` and `2h` with `h ~ eps^(1/(n+4)) max(1, |x|)`. Fails when a
/// breakpoint lies strictly inside the wider stencil.
pub fn finite_difference_derivative(
    f: impl Fn(f64) -> f64,
    x: f64,
    n: usize,
    breakpoints: &[f64],
) -> Result<f64> {
    if n == 0 {
        return Ok(f(x));
    }
    let h = f64::EPSILON.powf(1.0 / (n as f64 + 4.0)) * x.abs().max(1.0);
    let reach = n as f64 * h;
    let (lo, hi) = (x - reach, x + reach);
    if let Some(&b) = breakpoints.iter().find(|&&b| b > lo && b < hi) {
        return Err(Error::StencilCrossesBreakpoint {
            lo,
            hi,
            breakpoint: b,
        });
    }
    let central = |step: f64| {
        let mut binom = 1.0;
        let mut acc = 0.0;
        for j in 0..=n {
            let offset = (n as f64 / 2.0 - j as f64) * step;
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            acc += sign * binom * f(x + offset);
            binom = binom * (n - j) as f64 / (j + 1) as f64;
        }
        acc / step.powi(n as i32)
    };
    Ok((4.0 * central(h) - central(2.0 * h)) / 3.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envelope::Envelope;
    use crate::polynomial::{Interval, Polynomial};
    use crate::synthesis::SuperoscSpec;
    use approx::assert_relative_eq;

    fn fig1() -> SuperoscSpec {
        SuperoscSpec::new(
            Polynomial::cubic_prototype(0.1).unwrap(),
            Envelope::sinc_power(4).unwrap(),
            1.0,
            Interval::new(0.1).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn tail_without_frequencies_falls_back_to_l1() {
        let model = TailModel {
            amplitude: 3.0,
            decay: 2.0,
            frequencies: Vec::new(),
        };
        assert_relative_eq!(model.estimate(5.0, 10.0), 0.6, max_relative = 1e-15);
        let slow = TailModel { decay: 1.0, ..model };
        assert_eq!(slow.estimate(5.0, 10.0), f64::INFINITY);
    }

    fn envelope_only(env: Envelope) -> SuperoscSpec {
        SuperoscSpec::new(Polynomial::constant(1.0).unwrap(), env, 1.0, Interval::new(0.1).unwrap())
            .unwrap()
    }

    #[test]
    fn inverse_examples() {
        let cfg = QuadConfig::default();
        let r = inverse_transform_point(&fig1().spectrum(), 0.0, &cfg);
        assert!(r.converged);
        assert!(r.value.norm() < 1e-10);

        let env = envelope_only(Envelope::sinc_power(4).unwrap());
        let r = inverse_transform_point(&env.spectrum(), 0.0, &cfg);
        assert!((r.value.re - 1.0).abs() < 1e-10);
        let r = inverse_transform_point(&env.spectrum(), 2.0, &cfg);
        assert!((r.value.re - (2.0 / PI).powi(4)).abs() < 1e-9);
        assert!(r.value.im.abs() < 1e-12);
    }

    #[test]
    fn forward_examples() {
        let cfg = QuadConfig::with_tol(1e-3);
        let env = Envelope::sinc_power(4).unwrap();
        let spec = envelope_only(env.clone());
        let r = forward_transform_point(|t| env.eval_time(t), 0.0, 1e4, Some(&spec.tail_model(1e4)), &cfg)
            .unwrap();
        assert!((r.value.re - 8.0 / 3.0).abs() < 1e-3);
        assert!(r.converged);

        let spec = fig1();
        let omega = 4.0;
        let model = spec.tail_model(1e4);
        let r = forward_transform_point(|t| spec.eval(t), omega, 1e4, Some(&model), &cfg).unwrap();
        let tail = model.estimate(omega, 1e4);
        assert!(tail.is_finite());
        assert!(r.value.norm() <= tail, "{} vs {}", r.value.norm(), tail);

        let zero = forward_transform_point(|_| 0.0, 1.0, 10.0, None, &cfg).unwrap();
        assert_eq!(zero.value, Complex64::new(0.0, 0.0));
        assert!(forward_transform_point(|_| 0.0, 1.0, -1.0, None, &cfg).is_err());
    }

    #[test]
    fn forward_then_inverse_recovers_envelope_at_origin() {
        // e(0) = (1/2pi) ∫ E; sample E by the forward transform on a coarse grid
        let env = Envelope::sinc_power(4).unwrap();
        let spec = envelope_only(env.clone());
        let cfg = QuadConfig::with_tol(1e-2);
        let n = 16;
        let mut acc = 0.0;
        for k in 0..n {
            // midpoint rule over the support, each node a forward transform
            let w = -PI + (k as f64 + 0.5) * 2.0 * PI / n as f64;
            let r = forward_transform_point(|t| env.eval_time(t), w, 2e3, Some(&spec.tail_model(2e3)), &cfg)
                .unwrap();
            acc += r.value.re * 2.0 * PI / n as f64;
        }
        assert!((acc / (2.0 * PI) - 1.0).abs() < 1e-2);
    }

    #[test]
    fn finite_difference_examples() {
        let env = Envelope::sinc_power(4).unwrap();
        let d1 = finite_difference_derivative(|w| env.eval_freq(w), 0.0, 1, &[]).unwrap();
        assert!(d1.abs() < 1e-7);

        let bps = env.breakpoints();
        let d3 = finite_difference_derivative(|w| env.eval_freq(w), 0.3, 3, &bps).unwrap();
        assert_relative_eq!(d3, env.eval_freq_deriv(3, 0.3).unwrap(), max_relative = 1e-5);

        let bump = Envelope::bump();
        let d2 = finite_difference_derivative(|w| bump.eval_freq(w), 0.0, 2, &[]).unwrap();
        assert_relative_eq!(d2, bump.eval_freq_deriv(2, 0.0).unwrap(), max_relative = 1e-6);

        assert!(matches!(
            finite_difference_derivative(|w| env.eval_freq(w), PI / 2.0, 2, &bps),
            Err(Error::StencilCrossesBreakpoint { .. })
        ));
    }
}
