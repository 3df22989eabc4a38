//! The superoscillatory function `f(t) = p(t) e(t / D)` and its spectrum.
//!
//! With the transform convention `F(w) = ∫ f(t) e^{-iwt} dt`, multiplying by
//! `t^n` differentiates the spectrum `n` times with a factor `i^n`, and the
//! dilation `e(t/D)` has transform `D E(Dw)`. Together:
//!
//! ```text
//! F(w) = sum_n a_n i^n D^(n+1) E^(n)(D w),   |w| <= pi / D
//! ```
//!
//! and zero outside. Even powers land in the real part and odd powers in
//! the imaginary part, so an odd target gives a purely imaginary spectrum.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::envelope::{Envelope, EnvelopeFamily, MaxOrder};
use crate::error::{Error, Result};
use crate::oracle::TailModel;
use crate::polynomial::{Interval, Polynomial};

/// Outcome of checking a target degree against an envelope's smoothness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Admissibility {
    Ok {
        degree: usize,
        #[serde(serialize_with = "serialize_max_order")]
        max_order: MaxOrder,
    },
    Violation {
        degree: usize,
        max_order: usize,
        /// Smallest sinc power that carries this degree.
        required_m: usize,
        /// One more order of smoothness, for faster time-domain decay.
        suggested_m: usize,
    },
}

fn serialize_max_order<S: serde::Serializer>(m: &MaxOrder, s: S) -> std::result::Result<S::Ok, S::Error> {
    m.serialize(s)
}

impl Admissibility {
    pub fn is_ok(&self) -> bool {
        matches!(self, Admissibility::Ok { .. })
    }

    pub fn into_result(self) -> Result<()> {
        match self {
            Admissibility::Ok { .. } => Ok(()),
            Admissibility::Violation {
                degree,
                max_order,
                required_m,
                suggested_m,
            } => Err(Error::Inadmissible {
                degree,
                max_order,
                required_m,
                suggested_m,
            }),
        }
    }
}

/// Degree `N` needs `N - 1` continuous derivatives of the transform and a
/// bounded-variation `N`-th; `sinc_power(m)` provides exactly `m - 1`.
pub fn admissibility_check(poly: &Polynomial, env: &Envelope) -> Admissibility {
    let degree = poly.degree();
    match env.max_poly_order() {
        order @ MaxOrder::Unlimited => Admissibility::Ok {
            degree,
            max_order: order,
        },
        MaxOrder::Finite(max) if degree <= max => Admissibility::Ok {
            degree,
            max_order: MaxOrder::Finite(max),
        },
        MaxOrder::Finite(max) => Admissibility::Violation {
            degree,
            max_order: max,
            required_m: degree + 1,
            suggested_m: degree + 2,
        },
    }
}

/// Polynomial, envelope, dilation and superoscillation interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpecDraft", into = "SpecDraft")]
pub struct SuperoscSpec {
    poly: Polynomial,
    env: Envelope,
    dilation: f64,
    interval: Interval,
}

/// The JSON form of a spec before the dilation and admissibility checks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpecDraft {
    pub poly: Polynomial,
    pub env: Envelope,
    #[serde(rename = "D")]
    pub dilation: f64,
    pub interval: Interval,
}

impl SpecDraft {
    pub fn build(self) -> Result<SuperoscSpec> {
        SuperoscSpec::new(self.poly, self.env, self.dilation, self.interval)
    }
}

impl TryFrom<SpecDraft> for SuperoscSpec {
    type Error = Error;

    fn try_from(r: SpecDraft) -> Result<Self> {
        SuperoscSpec::new(r.poly, r.env, r.dilation, r.interval)
    }
}

impl From<SuperoscSpec> for SpecDraft {
    fn from(s: SuperoscSpec) -> Self {
        SpecDraft {
            poly: s.poly,
            env: s.env,
            dilation: s.dilation,
            interval: s.interval,
        }
    }
}

impl SuperoscSpec {
    pub fn new(poly: Polynomial, env: Envelope, dilation: f64, interval: Interval) -> Result<Self> {
        if !(dilation.is_finite() && dilation >= 1.0) {
            return Err(Error::InvalidParameter {
                name: "D",
                value: dilation,
                reason: "dilation must be finite and >= 1",
            });
        }
        admissibility_check(&poly, &env).into_result()?;
        Ok(SuperoscSpec {
            poly,
            env,
            dilation,
            interval,
        })
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn envelope(&self) -> &Envelope {
        &self.env
    }

    pub fn dilation(&self) -> f64 {
        self.dilation
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    pub fn with_dilation(&self, dilation: f64) -> Result<Self> {
        SuperoscSpec::new(self.poly.clone(), self.env.clone(), dilation, self.interval)
    }

    pub fn with_poly(&self, poly: Polynomial) -> Result<Self> {
        SuperoscSpec::new(poly, self.env.clone(), self.dilation, self.interval)
    }

    /// Band limit of `f`: `pi / D`.
    pub fn band_limit(&self) -> f64 {
        self.env.support_half_width() / self.dilation
    }

    /// `f(t) = p(t) e(t / D)`.
    pub fn eval(&self, t: f64) -> f64 {
        self.poly.eval(t) * self.env.eval_time(t / self.dilation)
    }

    /// Envelope order `k` and constant `C_k` used for the tail bounds:
    /// `|f(t)| <= P(|t|) C_k (D/|t|)^k` with `P` the coefficient majorant.
    pub fn decay_order(&self) -> (usize, f64) {
        let constants = self.env.decay_constants();
        let want = match self.env.family() {
            EnvelopeFamily::SincPower { m } => m,
            EnvelopeFamily::Bump => self.poly.degree() + 2,
        };
        constants
            .iter()
            .copied()
            .find(|&(k, _)| k == want)
            .unwrap_or_else(|| *constants.last().expect("at least one decay constant"))
    }

    /// Decay margin `k - N` of `|f|`; 1 means `f ~ 1/|t|`.
    pub fn decay_margin(&self) -> isize {
        self.decay_order().0 as isize - self.poly.degree() as isize
    }

    /// `|f(t)| <= amplitude |t|^-(k - N)` for `|t| >= horizon >= D`.
    pub fn tail_model(&self, horizon: f64) -> TailModel {
        let (k, ck) = self.decay_order();
        let n = self.poly.degree();
        let h = horizon.max(self.dilation);
        let poly_factor: f64 = self
            .poly
            .coeffs()
            .iter()
            .enumerate()
            .map(|(j, a)| a.abs() * h.powi(j as i32 - n as i32))
            .sum();
        let frequencies = match self.env.family() {
            EnvelopeFamily::SincPower { m } => (0..=m)
                .filter(|j| (m - j) % 2 == 0)
                .map(|j| j as f64 * PI / (m as f64 * self.dilation))
                .collect(),
            EnvelopeFamily::Bump => Vec::new(),
        };
        TailModel {
            amplitude: ck * self.dilation.powi(k as i32) * poly_factor,
            decay: k as f64 - n as f64,
            frequencies,
        }
    }

    /// Envelope decay orders `k > N` with their constants. For each of them
    /// `P(|t|) C_k (D/|t|)^k` bounds `|f(t)|` and is non-increasing in `|t|`.
    pub fn tail_orders(&self) -> Vec<(usize, f64)> {
        let n = self.poly.degree();
        self.env
            .decay_constants()
            .into_iter()
            .filter(|&(k, _)| k > n)
            .collect()
    }

    /// Non-increasing upper bound on `sup_{|s| >= |t|} |f(s)|`.
    pub fn amplitude_bound(&self, t: f64) -> f64 {
        let at = t.abs();
        let p = self.poly.majorant(at);
        self.tail_orders()
            .into_iter()
            .map(|(k, c)| p * c * (self.dilation / at).powi(k as i32))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn spectrum(&self) -> Spectrum {
        Spectrum::new(self)
    }
}

/// Evaluable `t -> f(t)` for a spec.
pub fn synthesize(spec: &SuperoscSpec) -> impl Fn(f64) -> f64 + '_ {
    move |t| spec.eval(t)
}

/// Real/imaginary structure of a spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    EvenReal,
    OddImaginary,
    Mixed,
}

/// The analytic transform of a spec, zero outside `[-pi/D, pi/D]`.
#[derive(Debug, Clone)]
pub struct Spectrum {
    coeffs: Vec<f64>,
    env: Envelope,
    dilation: f64,
    support_half_width: f64,
    breakpoints: Vec<f64>,
    parity: Parity,
}

impl Spectrum {
    fn new(spec: &SuperoscSpec) -> Self {
        let d = spec.dilation;
        let parity = if spec.poly.is_odd() {
            Parity::OddImaginary
        } else if spec.poly.is_even() {
            Parity::EvenReal
        } else {
            Parity::Mixed
        };
        Spectrum {
            coeffs: spec.poly.coeffs().to_vec(),
            env: spec.env.clone(),
            dilation: d,
            support_half_width: spec.env.support_half_width() / d,
            breakpoints: spec.env.breakpoints().iter().map(|b| b / d).collect(),
            parity,
        }
    }

    pub fn support_half_width(&self) -> f64 {
        self.support_half_width
    }

    /// Dilated envelope breakpoints, including the support ends.
    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn dilation(&self) -> f64 {
        self.dilation
    }

    /// Highest polynomial order contributing.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `a_n i^n D^(n+1) E^(n)(D w)`.
    pub fn term(&self, n: usize, w: f64) -> Complex64 {
        let a = self.coeffs.get(n).copied().unwrap_or(0.0);
        if a == 0.0 || w.abs() > self.support_half_width {
            return Complex64::new(0.0, 0.0);
        }
        let v = a * self.dilation.powi(n as i32 + 1) * self.envelope_derivative(n, w);
        match n % 4 {
            0 => Complex64::new(v, 0.0),
            1 => Complex64::new(0.0, v),
            2 => Complex64::new(-v, 0.0),
            _ => Complex64::new(0.0, -v),
        }
    }

    fn envelope_derivative(&self, n: usize, w: f64) -> f64 {
        self.env
            .eval_freq_deriv(n, self.dilation * w)
            .expect("spec admissibility bounds the derivative order")
    }

    /// `k`-th derivative of `F`, available while `N + k` stays within the
    /// envelope's derivative range.
    pub fn eval_deriv(&self, k: usize, w: f64) -> Result<Complex64> {
        if !(w.abs() <= self.support_half_width) {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let mut re = 0.0;
        let mut im = 0.0;
        for (n, &a) in self.coeffs.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            let v = a
                * self.dilation.powi((n + k) as i32 + 1)
                * self.env.eval_freq_deriv(n + k, self.dilation * w)?;
            match n % 4 {
                0 => re += v,
                1 => im += v,
                2 => re -= v,
                _ => im -= v,
            }
        }
        Ok(Complex64::new(re, im))
    }

    /// `F(w)`. Real and imaginary parts are accumulated separately, so
    /// parity zeros are exact.
    pub fn eval(&self, w: f64) -> Complex64 {
        if !(w.abs() <= self.support_half_width) {
            return Complex64::new(0.0, 0.0);
        }
        self.accumulate(|n| self.envelope_derivative(n, w))
    }

    /// `F(±(pi/D - h))` for `0 <= h <= pi/D`, evaluated from the distance
    /// `h` to the support edge. Near the edge this keeps digits that
    /// rounding `w` would lose.
    pub fn eval_from_edge(&self, h: f64, negative: bool) -> Complex64 {
        if !(h >= 0.0 && h <= self.support_half_width) {
            return Complex64::new(0.0, 0.0);
        }
        let dist = self.dilation * h;
        self.accumulate(|n| {
            self.env
                .eval_freq_deriv_from_edge(n, dist, negative)
                .expect("spec admissibility bounds the derivative order")
        })
    }

    fn accumulate(&self, mut envelope_derivative: impl FnMut(usize) -> f64) -> Complex64 {
        let mut re = 0.0;
        let mut im = 0.0;
        let mut scale = self.dilation;
        for (n, &a) in self.coeffs.iter().enumerate() {
            if a != 0.0 {
                let v = a * scale * envelope_derivative(n);
                match n % 4 {
                    0 => re += v,
                    1 => im += v,
                    2 => re -= v,
                    _ => im -= v,
                }
            }
            scale *= self.dilation;
        }
        Complex64::new(re, im)
    }
}
