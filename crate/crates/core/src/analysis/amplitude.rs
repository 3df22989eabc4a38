//! Global maximum of `|f|`, the price paid outside the superoscillation.

use rayon::prelude::*;
use serde::Serialize;

use crate::envelope::EnvelopeFamily;
use crate::synthesis::SuperoscSpec;

const POINTS_PER_UNIT_D: f64 = 20.0;
const MAX_HORIZON_DOUBLINGS: u32 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AmplitudeReport {
    pub t_max: f64,
    pub max_abs: f64,
    /// Half-width of the region actually scanned.
    pub horizon: f64,
    /// True when the decay majorant proves `|f| <= max_abs` beyond the
    /// horizon.
    pub certified: bool,
}

/// Default scan half-width `20 D m`. Bump envelopes use `m = N + 2`, the
/// decay order they are paired with elsewhere.
pub fn search_horizon(spec: &SuperoscSpec) -> f64 {
    let m = match spec.envelope().family() {
        EnvelopeFamily::SincPower { m } => m,
        EnvelopeFamily::Bump => spec.poly().degree() + 2,
    };
    20.0 * spec.dilation() * m as f64
}

pub fn amplitude_growth(spec: &SuperoscSpec) -> AmplitudeReport {
    amplitude_growth_with(spec, search_horizon(spec))
}

/// Grid scan with step `D / 20` over `|t| <= horizon`, then golden-section
/// refinement around the best grid point.
///
/// If the decay majorant at the horizon is still above the best value, the
/// horizon is doubled (up to 10 times) and the new annulus scanned; a slowly
/// decaying envelope can put the maximum well past `20 D m`.
pub fn amplitude_growth_with(spec: &SuperoscSpec, horizon: f64) -> AmplitudeReport {
    let step = spec.dilation() / POINTS_PER_UNIT_D;
    let abs_f = |t: f64| spec.eval(t).abs();
    let mut best = (0.0, abs_f(0.0));
    let mut done = 0usize;
    let mut h = horizon.max(step);
    let mut certified = false;
    for doubling in 0..=MAX_HORIZON_DOUBLINGS {
        let last = (h / step).floor() as usize;
        let found = (done + 1..=last)
            .into_par_iter()
            .flat_map_iter(|k| {
                let t = k as f64 * step;
                [(t, abs_f(t)), (-t, abs_f(-t))]
            })
            .reduce(|| (0.0, f64::NEG_INFINITY), better);
        best = better(best, found);
        done = last;
        if spec.amplitude_bound(h) <= best.1 {
            certified = true;
            break;
        }
        if doubling < MAX_HORIZON_DOUBLINGS {
            h *= 2.0;
        }
    }

    let (t0, v0) = best;
    let refined = golden_max(&abs_f, t0 - step, t0 + step);
    let (t_max, max_abs) = better((t0, v0), refined);
    AmplitudeReport {
        t_max,
        max_abs,
        horizon: h,
        certified,
    }
}

fn better(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    if b.1 > a.1 || (b.1 == a.1 && b.0.abs() < a.0.abs()) {
        b
    } else {
        a
    }
}

fn golden_max(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if b - a <= 1e-12 * a.abs().max(b.abs()).max(1.0) {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d);
        }
    }
    let t = 0.5 * (a + b);
    (t, f(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envelope::Envelope;
    use crate::polynomial::{Interval, Polynomial};

    fn cubic(s: f64) -> SuperoscSpec {
        SuperoscSpec::new(
            Polynomial::cubic_prototype(s).unwrap(),
            Envelope::sinc_power(4).unwrap(),
            1.0,
            Interval::new(s).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn constant_peaks_at_origin() {
        let spec = SuperoscSpec::new(
            Polynomial::constant(1.0).unwrap(),
            Envelope::sinc_power(4).unwrap(),
            1.0,
            Interval::new(0.1).unwrap(),
        )
        .unwrap();
        let r = amplitude_growth(&spec);
        assert_eq!(r.t_max, 0.0);
        assert_eq!(r.max_abs, 1.0);
        assert!(r.certified);
    }

    #[test]
    fn cubic_peaks_near_d() {
        let r = amplitude_growth(&cubic(0.1));
        assert!(r.max_abs > 100.0);
        assert!(r.t_max.abs() > 0.1 && r.t_max.abs() < 80.0);
        assert!(r.certified);
        assert_eq!(r.horizon, 80.0);
        // refinement is a true local maximum
        let spec = cubic(0.1);
        for dt in [-1e-4, 1e-4] {
            assert!(spec.eval(r.t_max + dt).abs() <= r.max_abs);
        }
    }

    #[test]
    fn halving_s_multiplies_peak_by_about_eight() {
        let a = amplitude_growth(&cubic(0.1)).max_abs;
        let b = amplitude_growth(&cubic(0.05)).max_abs;
        let ratio = b / a;
        assert!(ratio > 4.0 && ratio < 16.0, "{ratio}");
    }

    #[test]
    fn golden_section_finds_parabola_vertex() {
        let (t, v) = golden_max(&|x: f64| 3.0 - (x - 0.3).powi(2), 0.0, 1.0);
        assert!((t - 0.3).abs() < 1e-6);
        assert!((v - 3.0).abs() < 1e-12);
    }
}
