//! Real polynomials in the monomial basis.
//!
//! These are the target shapes that a superoscillatory function reproduces
//! inside its central interval. Coefficients are stored lowest power first,
//! so `coeffs[n]` multiplies `t^n`.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest degree accepted anywhere in the crate.
pub const MAX_DEGREE: usize = 30;

/// Above this degree the monomial basis is poorly conditioned on typical
/// intervals and fits start losing digits.
pub const CONDITIONING_WARN_DEGREE: usize = 15;

/// A real polynomial `a_0 + a_1 t + ... + a_N t^N` with `a_N != 0`.
///
/// The zero polynomial is stored as `[0.0]` and reports degree 0.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PolynomialRepr", into = "PolynomialRepr")]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct PolynomialRepr {
    coeffs: Vec<f64>,
}

impl TryFrom<PolynomialRepr> for Polynomial {
    type Error = Error;

    fn try_from(repr: PolynomialRepr) -> Result<Self> {
        Polynomial::new(repr.coeffs)
    }
}

impl From<Polynomial> for PolynomialRepr {
    fn from(p: Polynomial) -> Self {
        PolynomialRepr { coeffs: p.coeffs }
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial{:?}", self.coeffs)
    }
}

impl Polynomial {
    /// Builds a polynomial, trimming trailing zero coefficients.
    pub fn new(mut coeffs: Vec<f64>) -> Result<Self> {
        if let Some((index, &value)) = coeffs.iter().enumerate().find(|(_, c)| !c.is_finite()) {
            return Err(Error::NonFiniteCoefficient { index, value });
        }
        while coeffs.len() > 1 && coeffs[coeffs.len() - 1] == 0.0 {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        let degree = coeffs.len() - 1;
        if degree > MAX_DEGREE {
            return Err(Error::DegreeTooHigh {
                degree,
                max: MAX_DEGREE,
            });
        }
        Ok(Polynomial { coeffs })
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: vec![0.0] }
    }

    pub fn constant(c: f64) -> Result<Self> {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == 0.0
    }

    /// True when every even-power coefficient is exactly zero.
    pub fn is_odd(&self) -> bool {
        !self.is_zero() && self.coeffs.iter().step_by(2).all(|&c| c == 0.0)
    }

    /// True when every odd-power coefficient is exactly zero.
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(|&c| c == 0.0)
    }

    /// Horner evaluation.
    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }

    /// `sum |a_n| t^n` for `t >= 0`; bounds `|p(t)|` and `|p(-t)|` from above.
    pub fn majorant(&self, t: f64) -> f64 {
        let t = t.abs();
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c.abs())
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() == 1 {
            return Polynomial::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, &c)| n as f64 * c)
            .collect();
        Polynomial::new(coeffs).expect("derivative of a valid polynomial is valid")
    }

    pub fn scale(&self, factor: f64) -> Result<Polynomial> {
        Polynomial::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| self.coeffs.get(i).unwrap_or(&0.0) + other.coeffs.get(i).unwrap_or(&0.0))
            .collect();
        Polynomial::new(coeffs)
    }

    /// `(3 sqrt(3) / 2) ((t/s)^3 - t/s)`: zeros at `-s, 0, s` and unit
    /// extremal magnitude at `t = ±s/sqrt(3)`.
    pub fn cubic_prototype(s: f64) -> Result<Polynomial> {
        check_scale(s)?;
        let amp = 1.5 * 3f64.sqrt();
        Polynomial::new(vec![0.0, -amp / s, 0.0, amp / (s * s * s)])
    }

    /// `leading * prod_k (t/s - r_k)`.
    ///
    /// Linear factors are multiplied in ascending order of `|r_k|`.
    pub fn from_roots(roots: &[f64], s: f64, leading: f64) -> Result<Polynomial> {
        check_scale(s)?;
        if let Some(&r) = roots.iter().find(|r| !r.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "root",
                value: r,
                reason: "roots must be finite",
            });
        }
        if roots.len() > MAX_DEGREE {
            return Err(Error::DegreeTooHigh {
                degree: roots.len(),
                max: MAX_DEGREE,
            });
        }
        let mut ordered = roots.to_vec();
        ordered.sort_by(|a, b| a.abs().total_cmp(&b.abs()));

        let inv_s = 1.0 / s;
        let mut acc = vec![leading];
        for r in ordered {
            // acc * (t/s - r)
            let mut next = vec![0.0; acc.len() + 1];
            for (i, &c) in acc.iter().enumerate() {
                next[i] -= c * r;
                next[i + 1] += c * inv_s;
            }
            acc = next;
        }
        Polynomial::new(acc)
    }
}

fn check_scale(s: f64) -> Result<()> {
    if s.is_finite() && s > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "s",
            value: s,
            reason: "scale must be positive and finite",
        })
    }
}

/// The symmetric interval `(-a, a)` on which the target shape is wanted.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "IntervalRepr", into = "IntervalRepr")]
pub struct Interval {
    half_width: f64,
}

#[derive(Serialize, Deserialize)]
struct IntervalRepr {
    a: f64,
}

impl TryFrom<IntervalRepr> for Interval {
    type Error = Error;

    fn try_from(repr: IntervalRepr) -> Result<Self> {
        Interval::new(repr.a)
    }
}

impl From<Interval> for IntervalRepr {
    fn from(i: Interval) -> Self {
        IntervalRepr { a: i.half_width }
    }
}

impl Interval {
    pub fn new(a: f64) -> Result<Self> {
        if a.is_finite() && a > 0.0 {
            Ok(Interval { half_width: a })
        } else {
            Err(Error::InvalidParameter {
                name: "a",
                value: a,
                reason: "interval half-width must be positive and finite",
            })
        }
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn contains(&self, t: f64) -> bool {
        t.abs() <= self.half_width
    }

    /// Same center, half-width multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Interval> {
        Interval::new(self.half_width * factor)
    }
}

/// Output of [`fit_polynomial`].
#[derive(Debug, Clone)]
pub struct PolynomialFit {
    pub poly: Polynomial,
    /// `sqrt(sum r_i^2)` over the samples.
    pub residual_norm: f64,
    /// Discrete estimate of the interval L2 norm of the residual,
    /// `sqrt(2a / n * sum r_i^2)`.
    pub residual_l2: f64,
}

/// Least-squares fit of a degree `<= degree` polynomial to `(t, value)` samples.
///
/// The design matrix is built in the scaled variable `t / a` and solved by
/// SVD, then mapped back to monomials in `t`.
pub fn fit_polynomial(
    samples: &[(f64, f64)],
    degree: usize,
    interval: Interval,
) -> Result<PolynomialFit> {
    if degree > MAX_DEGREE {
        return Err(Error::DegreeTooHigh {
            degree,
            max: MAX_DEGREE,
        });
    }
    if degree > CONDITIONING_WARN_DEGREE {
        log::warn!(
            "fitting degree {degree} in the monomial basis; expect conditioning loss above degree {CONDITIONING_WARN_DEGREE}"
        );
    }
    let a = interval.half_width();
    for &(t, v) in samples {
        if !t.is_finite() || !v.is_finite() {
            return Err(Error::InvalidParameter {
                name: "sample",
                value: if t.is_finite() { v } else { t },
                reason: "samples must be finite",
            });
        }
        if !interval.contains(t) {
            return Err(Error::SampleOutsideInterval { t, a });
        }
    }

    let mut ts: Vec<f64> = samples.iter().map(|s| s.0).collect();
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    let cols = degree + 1;
    if ts.len() < cols {
        return Err(Error::RankDeficient {
            reason: format!(
                "{} distinct sample abscissae cannot determine {} coefficients",
                ts.len(),
                cols
            ),
        });
    }

    let rows = samples.len();
    let design = DMatrix::from_fn(rows, cols, |i, j| (samples[i].0 / a).powi(j as i32));
    let rhs = DVector::from_iterator(rows, samples.iter().map(|s| s.1));
    let svd = design.clone().svd(true, true);
    let sigma_max = svd.singular_values.max();
    let sigma_min = svd.singular_values.min();
    if !(sigma_max > 0.0) || sigma_min / sigma_max < 1e-13 {
        return Err(Error::RankDeficient {
            reason: format!("condition number {:.3e} too large", sigma_max / sigma_min),
        });
    }
    let scaled = svd
        .solve(&rhs, sigma_max * 1e-14)
        .map_err(|e| Error::RankDeficient {
            reason: e.to_string(),
        })?;

    let residual = &design * &scaled - &rhs;
    let sum_sq = residual.norm_squared();
    let coeffs = scaled
        .iter()
        .enumerate()
        .map(|(j, c)| c / a.powi(j as i32))
        .collect();

    Ok(PolynomialFit {
        poly: Polynomial::new(coeffs)?,
        residual_norm: sum_sq.sqrt(),
        residual_l2: (2.0 * a / rows as f64 * sum_sq).sqrt(),
    })
}
