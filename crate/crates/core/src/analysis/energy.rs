//! Time- and frequency-side energies of `f`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::quadrature::{integrate_segments, QuadConfig};
use crate::synthesis::SuperoscSpec;

/// Relative size the time-side tail must reach before extension stops.
const TAIL_TARGET: f64 = 1e-9;
/// Horizon doublings allowed when the tail bound decays faster than `1/T`.
const MAX_DOUBLINGS: u32 = 10;
/// Doublings in the marginal case, where the tail only falls like `1/T`.
const MARGINAL_DOUBLINGS: u32 = 6;

/// Which side of the energy identity to trust.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Authority {
    /// Both sides are converged and comparable.
    Both,
    /// The time integral could not be closed off; only the compact-support
    /// frequency integral is reliable.
    Frequency,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParsevalReport {
    /// `∫_{-T}^{T} f^2 dt`.
    pub time_energy: f64,
    /// `(1/2pi) ∫ |F|^2 dw`.
    pub freq_energy: f64,
    /// `|time - freq| / freq`.
    pub relative_gap: f64,
    /// Rigorous bound on `∫_{|t| > T} f^2 dt`.
    pub time_tail_bound: f64,
    pub horizon: f64,
    /// `k - N`; 1 means `f ~ 1/|t|` and a slowly converging time side.
    pub decay_margin: isize,
    pub marginal: bool,
    pub freq_converged: bool,
    pub time_converged: bool,
    pub authority: Authority,
}

impl ParsevalReport {
    /// Whether the two sides agree within `tol` and the comparison is
    /// meaningful.
    pub fn agrees_within(&self, tol: f64) -> bool {
        self.authority == Authority::Both && self.relative_gap <= tol
    }
}

/// `∫_{|t| > T} f^2 dt <= min_k 2 C_k^2 D^(2k) sum_{n,n'} |a_n||a_n'|
/// T^(n+n'-2k+1) / (2k-n-n'-1)` over the envelope decay orders `k > N`.
pub fn energy_tail_bound(spec: &SuperoscSpec, horizon: f64) -> f64 {
    let d = spec.dilation();
    let coeffs = spec.poly().coeffs();
    spec.tail_orders()
        .into_iter()
        .map(|(k, c)| {
            let mut sum = 0.0;
            for (n, a) in coeffs.iter().enumerate() {
                for (m, b) in coeffs.iter().enumerate() {
                    let p = (n + m) as i32 - 2 * k as i32 + 1;
                    sum += (a * b).abs() * horizon.powi(p) / (-p) as f64;
                }
            }
            2.0 * (c * d.powi(k as i32)).powi(2) * sum
        })
        .fold(f64::INFINITY, f64::min)
}

pub fn energy_parseval_check(spec: &SuperoscSpec, cfg: &QuadConfig) -> ParsevalReport {
    let sp = spec.spectrum();
    let freq = integrate_segments(|w| sp.eval(w).norm_sqr(), sp.breakpoints(), cfg);
    let freq_energy = freq.value / (2.0 * PI);

    let d = spec.dilation();
    let panel = 4.0 * d;
    let time_integral = |lo: f64, hi: f64| {
        let count = ((hi - lo) / panel).ceil().max(1.0) as usize;
        let points: Vec<f64> = (0..=count)
            .map(|i| lo + (hi - lo) * i as f64 / count as f64)
            .collect();
        integrate_segments(
            |t| {
                let v = spec.eval(t);
                v * v
            },
            &points,
            cfg,
        )
    };

    let margin = spec.decay_margin();
    let marginal = margin <= 1;
    let doublings = if marginal { MARGINAL_DOUBLINGS } else { MAX_DOUBLINGS };
    let mut horizon = super::search_horizon(spec);
    let first = time_integral(-horizon, horizon);
    let mut time_energy = first.value;
    let mut time_converged = first.converged;
    let mut tail = energy_tail_bound(spec, horizon);
    for _ in 0..doublings {
        if tail <= TAIL_TARGET * freq_energy {
            break;
        }
        let (right, left) = rayon::join(
            || time_integral(horizon, 2.0 * horizon),
            || time_integral(-2.0 * horizon, -horizon),
        );
        time_energy += right.value + left.value;
        time_converged &= right.converged && left.converged;
        horizon *= 2.0;
        tail = energy_tail_bound(spec, horizon);
    }

    let closed = time_converged && freq.converged && tail <= TAIL_TARGET * freq_energy;
    let relative_gap = if freq_energy > 0.0 {
        (time_energy - freq_energy).abs() / freq_energy
    } else {
        time_energy.abs()
    };
    ParsevalReport {
        time_energy,
        freq_energy,
        relative_gap,
        time_tail_bound: tail,
        horizon,
        decay_margin: margin,
        marginal,
        freq_converged: freq.converged,
        time_converged,
        authority: if closed && !marginal {
            Authority::Both
        } else {
            Authority::Frequency
        },
    }
}
