//! Sign-change zeros and the zero-spacing local frequency.
//!
//! Only zeros where `f` changes sign are found; a tangential zero (double
//! root without sign change) between grid points is invisible to the scan.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::synthesis::SuperoscSpec;

const GRID_INTERVALS: usize = 2000;
const BISECTION_TOL: f64 = 1e-12;

/// Sign-change zeros of `f` in `[lo, hi]`, ascending.
///
/// The scan step is `(hi - lo) / 2000`, i.e. `a / 1000` on `(-a, a)`.
pub fn find_zeros(spec: &SuperoscSpec, lo: f64, hi: f64) -> Vec<f64> {
    find_sign_changes(|t| spec.eval(t), lo, hi, GRID_INTERVALS)
}

pub(crate) fn find_sign_changes(f: impl Fn(f64) -> f64, lo: f64, hi: f64, intervals: usize) -> Vec<f64> {
    let mut zeros = Vec::new();
    if !(hi > lo) {
        return zeros;
    }
    let step = (hi - lo) / intervals as f64;
    let mut prev_t = lo;
    let mut prev_v = f(lo);
    if prev_v == 0.0 {
        zeros.push(lo);
    }
    for i in 1..=intervals {
        let t = if i == intervals { hi } else { lo + step * i as f64 };
        let v = f(t);
        if v == 0.0 {
            zeros.push(t);
        } else if prev_v != 0.0 && (v > 0.0) != (prev_v > 0.0) {
            zeros.push(bisect(&f, prev_t, prev_v, t));
        }
        prev_t = t;
        prev_v = v;
    }
    zeros
}

fn bisect(f: &impl Fn(f64) -> f64, mut a: f64, fa: f64, mut b: f64) -> f64 {
    let positive_at_a = fa > 0.0;
    while b - a > BISECTION_TOL {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if (fm > 0.0) == positive_at_a {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LocalFrequency {
    pub midpoint: f64,
    /// `pi / (z_{k+1} - z_k)`: adjacent zeros are half a period apart.
    pub frequency: f64,
}

/// Local frequency between each pair of adjacent zeros in `[lo, hi]`.
pub fn local_frequency(spec: &SuperoscSpec, lo: f64, hi: f64) -> Result<Vec<LocalFrequency>> {
    let zeros = find_zeros(spec, lo, hi);
    frequencies_from_zeros(&zeros)
}

fn frequencies_from_zeros(zeros: &[f64]) -> Result<Vec<LocalFrequency>> {
    if zeros.len() < 2 {
        return Err(Error::NoSuperoscillationEvidence { zeros: zeros.len() });
    }
    Ok(zeros
        .windows(2)
        .map(|w| LocalFrequency {
            midpoint: 0.5 * (w[0] + w[1]),
            frequency: PI / (w[1] - w[0]),
        })
        .collect())
}

/// Evidence that `f` oscillates faster than its band limit on `(-a, a)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub zeros: Vec<f64>,
    pub min_frequency: f64,
    pub band_limit: f64,
    /// `min_frequency / band_limit`; above 1 means superoscillation.
    pub ratio: f64,
}

impl Certificate {
    pub fn superoscillates(&self) -> bool {
        self.ratio > 1.0
    }
}

/// Zeros are searched on `[-1.01a, 1.01a]` so that zeros sitting exactly on
/// the interval ends are found; gaps count when their midpoint lies inside
/// `(-a, a)`.
pub fn superoscillation_certificate(spec: &SuperoscSpec) -> Result<Certificate> {
    let a = spec.interval().half_width();
    let zeros = find_zeros(spec, -1.01 * a, 1.01 * a);
    let inside: Vec<LocalFrequency> = frequencies_from_zeros(&zeros)?
        .into_iter()
        .filter(|lf| lf.midpoint.abs() < a)
        .collect();
    if inside.is_empty() {
        return Err(Error::NoSuperoscillationEvidence { zeros: zeros.len() });
    }
    let min_frequency = inside.iter().map(|lf| lf.frequency).fold(f64::INFINITY, f64::min);
    let band_limit = spec.band_limit();
    Ok(Certificate {
        zeros,
        min_frequency,
        band_limit,
        ratio: min_frequency / band_limit,
    })
}
