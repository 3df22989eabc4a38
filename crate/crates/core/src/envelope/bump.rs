//! The smooth compactly supported spectrum `exp(-1 / (pi^2 - w^2))`.
//!
//! Derivatives follow from `E^(n) = R_n E` with `R_0 = 1` and
//! `R_{n+1} = R_n' + R_n phi'`, `phi = -1/u`, `u = pi^2 - w^2`. `R_n` is kept
//! in two equivalent forms:
//!
//! * `P_n(w) / u^(2n)` with `P_n` a polynomial in `w`; accurate near the
//!   center, where `u` is large and the powers of `w` are small.
//! * `sum c_jk w^j u^k` with `j in {0, 1}` and `k <= 0`; accurate near the
//!   support edges, where the most negative power of `u` dominates and the
//!   `w`-polynomial would cancel catastrophically.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::polynomial::MAX_DEGREE;
use crate::quadrature::{integrate_segments, QuadConfig};

/// Highest derivative order precomputed.
pub const MAX_ORDER: usize = MAX_DEGREE + 1;

/// Highest order `k` of the `|e(t)| <= C_k / |t|^k` bounds.
const DECAY_ORDERS: usize = 14;

/// `|w|` below which the `w`-polynomial form is used.
const CENTER_FORM_LIMIT: f64 = 1.75;

/// Node count of the coarsest periodic trapezoid grid.
const BASE_NODES: usize = 4096;
const MAX_NODES: usize = 65536;

/// Distance from `t` to its first alias that the grid must leave free.
/// `|e(t)|` drops below `1e-17` well before this.
const ALIAS_MARGIN: f64 = 3000.0;

/// Beyond this `|t|` the far-field sum is used.
const FAR_FIELD: f64 = 64.0;
/// Derivative order of the far-field sum.
const FAR_ORDER: usize = 6;
/// Alias margin of the far-field sum; its aliases `s^6 e(s)` decay slower.
const FAR_ALIAS_MARGIN: f64 = 6000.0;

/// Breakpoints that concentrate panels near the support edges, where
/// high derivatives peak.
pub fn segment_points() -> Vec<f64> {
    let mut right: Vec<f64> = (1..=7).map(|k| PI * (1.0 - 0.5f64.powi(k))).collect();
    right.push(PI);
    let mut points: Vec<f64> = right.iter().rev().map(|x| -x).collect();
    points.push(0.0);
    points.extend(right);
    points
}

#[derive(Debug)]
pub struct BumpTables {
    /// Scale making `e(0) = 1`.
    pub normalization: f64,
    /// Raw (unnormalized) integral of the bump over `[-pi, pi]`.
    pub raw_integral: f64,
    center_form: Vec<Vec<f64>>,
    edge_form: Vec<Vec<(u8, i32, f64)>>,
    /// `edge_form` as coefficients of `u^-p`, `p = 0, 1, ...`, split by `j`.
    edge_dense: Vec<[Vec<f64>; 2]>,
    /// Normalized spectrum sampled at `w_j = j * 2pi / MAX_NODES`, `j = 0..=MAX_NODES/2`.
    samples: Vec<f64>,
    /// The same for its `FAR_ORDER`-th derivative.
    far_samples: Vec<f64>,
    /// `(k, C_k)` with `|e(t)| <= C_k |t|^-k`.
    pub decay_constants: Vec<(usize, f64)>,
}

impl BumpTables {
    pub fn shared() -> &'static BumpTables {
        static TABLES: OnceLock<BumpTables> = OnceLock::new();
        TABLES.get_or_init(BumpTables::build)
    }

    fn build() -> BumpTables {
        let center_form = center_form_polynomials(MAX_ORDER);
        let edge_form = edge_form_terms(MAX_ORDER);
        let edge_dense = edge_form.iter().map(|terms| dense_edge_form(terms)).collect();
        let mut tables = BumpTables {
            normalization: 1.0,
            raw_integral: 0.0,
            center_form,
            edge_form,
            edge_dense,
            samples: Vec::new(),
            far_samples: Vec::new(),
            decay_constants: Vec::new(),
        };

        let cfg = QuadConfig {
            abs_tol: 1e-15,
            rel_tol: 1e-15,
            ..QuadConfig::default()
        };
        let raw = integrate_segments(|w| tables.raw_derivative(0, w), &segment_points(), &cfg);
        tables.raw_integral = raw.value;
        tables.normalization = 2.0 * PI / raw.value;

        let step = 2.0 * PI / MAX_NODES as f64;
        tables.samples = (0..=MAX_NODES / 2)
            .map(|j| tables.normalization * tables.raw_derivative(0, j as f64 * step))
            .collect();
        tables.far_samples = (0..=MAX_NODES / 2)
            .map(|j| tables.normalization * tables.raw_derivative(FAR_ORDER, j as f64 * step))
            .collect();

        let loose = QuadConfig {
            abs_tol: 0.0,
            rel_tol: 1e-7,
            max_doublings: 12,
            initial_panels: 4,
        };
        let c = tables.normalization;
        let mut constants = vec![(0, 1.0)];
        for k in 1..=DECAY_ORDERS {
            let l1 = integrate_segments(|w| (c * tables.raw_derivative(k, w)).abs(), &segment_points(), &loose);
            // absolute-value integrands converge slowly at the sign changes;
            // pad by the reported error plus a relative margin
            constants.push((k, (l1.value + l1.error_estimate) * 1.001 / (2.0 * PI)));
        }
        tables.decay_constants = constants;
        tables
    }

    /// `d^n/dw^n exp(-1/(pi^2 - w^2))`, zero outside `(-pi, pi)`.
    pub fn raw_derivative(&self, n: usize, w: f64) -> f64 {
        let a = w.abs();
        if !(a < PI) {
            return 0.0;
        }
        let u = (PI - a) * (PI + a);
        if a < CENTER_FORM_LIMIT {
            self.center_value(n, w, u)
        } else {
            self.edge_value(n, w, u)
        }
    }

    /// `raw_derivative` at `w = ±(pi - dist)`, `dist >= 0`. Near the edge
    /// the derivatives are steep enough that rounding `w` itself would cost
    /// digits; `u` is formed from `dist` instead.
    pub fn raw_derivative_from_edge(&self, n: usize, dist: f64, negative: bool) -> f64 {
        if !(dist > 0.0) {
            return 0.0;
        }
        let a = PI - dist;
        let w = if negative { -a } else { a };
        if a.abs() < CENTER_FORM_LIMIT || dist >= PI {
            return self.raw_derivative(n, w);
        }
        let u = dist * (2.0 * PI - dist);
        self.edge_value(n, w, u)
    }

    fn center_value(&self, n: usize, w: f64, u: f64) -> f64 {
        let poly = self.center_form[n].iter().rev().fold(0.0, |acc, &c| acc * w + c);
        poly * (-1.0 / u).exp() / u.powi(2 * n as i32)
    }

    fn edge_value(&self, n: usize, w: f64, u: f64) -> f64 {
        let decay = (-1.0 / u).exp();
        if decay < 1e-280 {
            // u^k and the exponential would over- and underflow separately
            let ln_u = u.ln();
            return self.edge_form[n]
                .iter()
                .map(|&(j, k, c)| {
                    let arg = k as f64 * ln_u - 1.0 / u;
                    let wj = if j == 1 { w } else { 1.0 };
                    if arg < -745.0 {
                        0.0
                    } else {
                        c * wj * arg.exp()
                    }
                })
                .sum();
        }
        let inv = 1.0 / u;
        let horner = |coeffs: &[f64]| coeffs.iter().rev().fold(0.0, |acc, &c| acc * inv + c);
        let [even, odd] = &self.edge_dense[n];
        (horner(even) + w * horner(odd)) * decay
    }

    /// `e(t)` by the periodic trapezoid rule on the normalized spectrum.
    ///
    /// The spectrum and all its derivatives vanish at `±pi`, so the
    /// trapezoid sum with spacing `2pi/M` equals `sum_k e(t + kM)` exactly;
    /// the grid is chosen so the nearest alias is at least `ALIAS_MARGIN`
    /// away from `t`.
    ///
    /// Far out, the direct sum cancels down to an absolute floor near
    /// `1e-16`, which a high-degree polynomial factor would amplify. There
    /// the transform is taken of `E^(6)` instead, which is `-t^6 e(t)`, so
    /// the floor drops by `t^6`.
    pub fn eval_time(&self, t: f64) -> f64 {
        let at = t.abs();
        if at <= FAR_FIELD {
            trapezoid_cos(&self.samples, t, grid_nodes(at + ALIAS_MARGIN))
        } else {
            let nodes = grid_nodes(2.0 * at + FAR_ALIAS_MARGIN);
            -trapezoid_cos(&self.far_samples, t, nodes) / at.powi(FAR_ORDER as i32)
        }
    }
}

/// Smallest power-of-two node count, from `BASE_NODES` to `MAX_NODES`,
/// that reaches `span`.
fn grid_nodes(span: f64) -> usize {
    let mut nodes = BASE_NODES;
    while (nodes as f64) < span && nodes < MAX_NODES {
        nodes *= 2;
    }
    nodes
}

/// `(1/2pi) sum_j g(w_j) cos(w_j t) dw` over `nodes` points on `[-pi, pi)`
/// for an even `g` sampled at `MAX_NODES` resolution.
fn trapezoid_cos(samples: &[f64], t: f64, nodes: usize) -> f64 {
    let stride = MAX_NODES / nodes;
    let dw = 2.0 * PI / nodes as f64;
    let half = nodes / 2;

    // cos(j dw t) by complex rotation, reseeded every block
    const BLOCK: usize = 32;
    let mut sum = 0.0;
    let mut j = 1;
    let (rs, rc) = (dw * t).sin_cos();
    while j < half {
        let end = (j + BLOCK).min(half);
        let (mut s, mut c) = (j as f64 * dw * t).sin_cos();
        for jj in j..end {
            sum += samples[jj * stride] * c;
            let nc = c * rc - s * rs;
            s = s * rc + c * rs;
            c = nc;
        }
        j = end;
    }
    (samples[0] + 2.0 * sum) * dw / (2.0 * PI)
}

/// `P_n` in `R_n = P_n(w) / u^(2n)`:
/// `P_{n+1} = u^2 P_n' + 4 n w u P_n - 2 w P_n`.
fn center_form_polynomials(max_order: usize) -> Vec<Vec<f64>> {
    let pi2 = PI * PI;
    let u = [pi2, 0.0, -1.0];
    let u2 = poly_mul(&u, &u);
    let mut out = vec![vec![1.0]];
    for n in 0..max_order {
        let p = &out[n];
        let dp: Vec<f64> = if p.len() > 1 {
            p.iter().enumerate().skip(1).map(|(k, c)| k as f64 * c).collect()
        } else {
            vec![0.0]
        };
        let a = poly_mul(&u2, &dp);
        let b: Vec<f64> = poly_mul(&poly_mul(&[0.0, 4.0 * n as f64], &u), p);
        let c: Vec<f64> = poly_mul(&[0.0, -2.0], p);
        out.push(poly_add(&poly_add(&a, &b), &c));
    }
    out
}

/// `R_n` as `sum c w^j u^k`, reducing `w^2 = pi^2 - u` so `j` stays in `{0, 1}`.
fn edge_form_terms(max_order: usize) -> Vec<Vec<(u8, i32, f64)>> {
    let pi2 = PI * PI;
    let mut current: BTreeMap<(u8, i32), f64> = BTreeMap::new();
    current.insert((0, 0), 1.0);
    let mut out = vec![flatten(&current)];
    for _ in 0..max_order {
        let mut next: BTreeMap<(u8, i32), f64> = BTreeMap::new();
        let mut add = |j: u8, k: i32, v: f64| *next.entry((j, k)).or_insert(0.0) += v;
        for (&(j, k), &c) in &current {
            let kf = k as f64;
            if j == 0 {
                // d(u^k) = -2k w u^(k-1); times phi' = -2 w u^-2
                add(1, k - 1, -2.0 * kf * c);
                add(1, k - 2, -2.0 * c);
            } else {
                // d(w u^k) = (1 + 2k) u^k - 2k pi^2 u^(k-1)
                add(0, k, (1.0 + 2.0 * kf) * c);
                add(0, k - 1, -2.0 * kf * pi2 * c);
                // w u^k * (-2 w u^-2) = -2 pi^2 u^(k-2) + 2 u^(k-1)
                add(0, k - 2, -2.0 * pi2 * c);
                add(0, k - 1, 2.0 * c);
            }
        }
        next.retain(|_, v| *v != 0.0);
        out.push(flatten(&next));
        current = next;
    }
    out
}

fn dense_edge_form(terms: &[(u8, i32, f64)]) -> [Vec<f64>; 2] {
    let mut out = [Vec::new(), Vec::new()];
    for &(j, k, c) in terms {
        let slot = &mut out[j as usize];
        let p = (-k) as usize;
        if slot.len() <= p {
            slot.resize(p + 1, 0.0);
        }
        slot[p] += c;
    }
    out
}

fn flatten(terms: &BTreeMap<(u8, i32), f64>) -> Vec<(u8, i32, f64)> {
    terms.iter().map(|(&(j, k), &c)| (j, k, c)).collect()
}

fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &[f64], b: &[f64]) -> Vec<f64> {
    let len = a.len().max(b.len());
    (0..len)
        .map(|i| a.get(i).unwrap_or(&0.0) + b.get(i).unwrap_or(&0.0))
        .collect()
}
