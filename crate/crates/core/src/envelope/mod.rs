//! Bandlimited envelopes `e(t)` with `e(0) = 1` and spectra on `[-pi, pi]`.
//!
//! Two families are provided:
//!
//! * `sinc_power(m)`: `e(t) = sinc^m(t / m)` with `sinc(x) = sin(pi x)/(pi x)`.
//!   Its transform is an exact piecewise polynomial of degree `m - 1` with
//!   `m - 2` continuous derivatives, so it tames polynomials up to degree
//!   `m - 1`.
//! * `bump`: transform proportional to `exp(-1/(pi^2 - w^2))`, smooth with
//!   compact support, so any polynomial degree is admissible.
//!
//! The time-domain decay behind the admissibility rule is `O(|t|^-(N+1))`
//! for a transform with `N` derivatives of bounded variation.

mod bump;
mod piecewise;

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::quadrature::{integrate_segments, QuadConfig};

pub use bump::BumpTables;
pub use piecewise::{DerivativeValue, PiecewisePolySpectrum};

/// Which envelope family, as it appears in JSON.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum EnvelopeFamily {
    SincPower { m: usize },
    Bump,
}

/// Largest polynomial degree an envelope can carry while the product stays
/// bandlimited with finite energy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaxOrder {
    Finite(usize),
    Unlimited,
}

impl MaxOrder {
    pub fn admits(&self, degree: usize) -> bool {
        match self {
            MaxOrder::Finite(max) => degree <= *max,
            MaxOrder::Unlimited => true,
        }
    }
}

impl fmt::Display for MaxOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MaxOrder::Finite(n) => write!(f, "{n}"),
            MaxOrder::Unlimited => f.write_str("unlimited"),
        }
    }
}

impl Serialize for MaxOrder {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            MaxOrder::Finite(n) => s.serialize_u64(*n as u64),
            MaxOrder::Unlimited => s.serialize_str("unlimited"),
        }
    }
}

#[derive(Debug)]
enum Kind {
    SincPower(PiecewisePolySpectrum),
    Bump(&'static BumpTables),
}

/// An admissible envelope. Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct Envelope {
    family: EnvelopeFamily,
    kind: Arc<Kind>,
}

impl fmt::Debug for Envelope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Envelope({:?})", self.family)
    }
}

impl PartialEq for Envelope {
    fn eq(&self, other: &Self) -> bool {
        self.family == other.family
    }
}

impl Serialize for Envelope {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.family.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Envelope {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let family = EnvelopeFamily::deserialize(d)?;
        Envelope::from_family(family).map_err(serde::de::Error::custom)
    }
}

impl Envelope {
    pub fn from_family(family: EnvelopeFamily) -> Result<Self> {
        match family {
            EnvelopeFamily::SincPower { m } => Envelope::sinc_power(m),
            EnvelopeFamily::Bump => Ok(Envelope::bump()),
        }
    }

    /// `e(t) = sinc^m(t / m)`.
    pub fn sinc_power(m: usize) -> Result<Self> {
        // keeps the piecewise degree well inside the 32-point rule's exactness
        if !(2..=crate::polynomial::MAX_DEGREE + 1).contains(&m) {
            return Err(Error::InvalidSincPower { m });
        }
        Ok(Envelope {
            family: EnvelopeFamily::SincPower { m },
            kind: Arc::new(Kind::SincPower(PiecewisePolySpectrum::sinc_power(m))),
        })
    }

    /// Envelope whose transform is `c exp(-1/(pi^2 - w^2))`, with `c` fixing `e(0) = 1`.
    pub fn bump() -> Self {
        Envelope {
            family: EnvelopeFamily::Bump,
            kind: Arc::new(Kind::Bump(BumpTables::shared())),
        }
    }

    pub fn family(&self) -> EnvelopeFamily {
        self.family
    }

    pub fn max_poly_order(&self) -> MaxOrder {
        match self.family {
            EnvelopeFamily::SincPower { m } => MaxOrder::Finite(m - 1),
            EnvelopeFamily::Bump => MaxOrder::Unlimited,
        }
    }

    /// Highest derivative order of `E` that can be evaluated.
    pub fn max_derivative(&self) -> usize {
        match self.family {
            EnvelopeFamily::SincPower { m } => m - 1,
            EnvelopeFamily::Bump => bump::MAX_ORDER,
        }
    }

    /// Half-width of the transform's support.
    pub fn support_half_width(&self) -> f64 {
        PI
    }

    /// Scale applied to the raw transform so that `e(0) = 1`.
    pub fn normalization(&self) -> f64 {
        match &*self.kind {
            Kind::SincPower(_) => 1.0,
            Kind::Bump(t) => t.normalization,
        }
    }

    /// The exact piecewise transform, for sinc-power envelopes.
    pub fn piecewise(&self) -> Option<&PiecewisePolySpectrum> {
        match &*self.kind {
            Kind::SincPower(p) => Some(p),
            Kind::Bump(_) => None,
        }
    }

    /// Points in `[-pi, pi]` where the transform is not smooth, or where
    /// quadrature panels should be split.
    pub fn breakpoints(&self) -> Vec<f64> {
        match &*self.kind {
            Kind::SincPower(p) => p.breakpoints().to_vec(),
            Kind::Bump(_) => bump::segment_points(),
        }
    }

    pub fn eval_time(&self, t: f64) -> f64 {
        match (&*self.kind, self.family) {
            (Kind::SincPower(_), EnvelopeFamily::SincPower { m }) => {
                sinc(t / m as f64).powi(m as i32)
            }
            (Kind::Bump(tables), _) => tables.eval_time(t),
            _ => unreachable!("family and kind are built together"),
        }
    }

    /// `E(w)`.
    pub fn eval_freq(&self, w: f64) -> f64 {
        self.eval_freq_deriv_flagged(0, w)
            .expect("order 0 is always admissible")
            .value
    }

    /// `E^(n)(w)`.
    pub fn eval_freq_deriv(&self, n: usize, w: f64) -> Result<f64> {
        self.eval_freq_deriv_flagged(n, w).map(|v| v.value)
    }

    /// `E^(n)(w)`, flagging points where that derivative jumps. There the
    /// mean of the one-sided limits is returned.
    pub fn eval_freq_deriv_flagged(&self, n: usize, w: f64) -> Result<DerivativeValue> {
        if n > self.max_derivative() {
            return Err(Error::DerivativeOrder {
                n,
                max: self.max_derivative(),
            });
        }
        Ok(match &*self.kind {
            Kind::SincPower(p) => p.eval(n, w),
            Kind::Bump(t) => DerivativeValue {
                value: t.normalization * t.raw_derivative(n, w),
                at_jump: false,
            },
        })
    }

    /// `E^(n)(±(pi - dist))`, accurate in `dist` near the support edge.
    pub fn eval_freq_deriv_from_edge(&self, n: usize, dist: f64, negative: bool) -> Result<f64> {
        if n > self.max_derivative() {
            return Err(Error::DerivativeOrder {
                n,
                max: self.max_derivative(),
            });
        }
        Ok(match &*self.kind {
            Kind::SincPower(p) => {
                let a = PI - dist;
                p.eval(n, if negative { -a } else { a }).value
            }
            Kind::Bump(t) => t.normalization * t.raw_derivative_from_edge(n, dist, negative),
        })
    }

    /// `(k, C_k)` pairs with `|e(t)| <= C_k |t|^-k` for all `t`.
    pub fn decay_constants(&self) -> Vec<(usize, f64)> {
        match (&*self.kind, self.family) {
            (Kind::SincPower(_), EnvelopeFamily::SincPower { m }) => {
                // |sinc(x)| <= 1/(pi |x|)
                vec![(0, 1.0), (m, (m as f64 / PI).powi(m as i32))]
            }
            (Kind::Bump(t), _) => t.decay_constants.clone(),
            _ => unreachable!("family and kind are built together"),
        }
    }

    /// Rigorous upper bound on `|e(t)|`.
    pub fn decay_bound(&self, t: f64) -> f64 {
        let at = t.abs();
        self.decay_constants()
            .into_iter()
            .map(|(k, c)| c / at.powi(k as i32))
            .fold(f64::INFINITY, f64::min)
    }

    /// `∫ (E^(n)(w))^2 dw` over the support; exact for sinc powers.
    pub fn derivative_energy(&self, n: usize, cfg: &QuadConfig) -> Result<f64> {
        if n > self.max_derivative() {
            return Err(Error::DerivativeOrder {
                n,
                max: self.max_derivative(),
            });
        }
        Ok(match &*self.kind {
            Kind::SincPower(p) => p.derivative_energy(n),
            Kind::Bump(t) => {
                let c = t.normalization;
                integrate_segments(
                    |w| (c * t.raw_derivative(n, w)).powi(2),
                    &bump::segment_points(),
                    cfg,
                )
                .value
            }
        })
    }
}

/// `sin(pi x) / (pi x)`, with a series near zero.
pub fn sinc(x: f64) -> f64 {
    let y = PI * x;
    if y.abs() < 1e-4 {
        let y2 = y * y;
        1.0 - y2 / 6.0 + y2 * y2 / 120.0
    } else {
        y.sin() / y
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::finite_difference_derivative;
    use crate::quadrature::gl32;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sinc_power_spectrum_values() {
        let env = Envelope::sinc_power(4).unwrap();
        assert_relative_eq!(env.eval_freq(0.0), 8.0 / 3.0, max_relative = 1e-14);
        let p = env.piecewise().unwrap();
        let k = p.breakpoints().iter().position(|&b| b == PI / 2.0).unwrap();
        let w = p.breakpoints()[k] - p.breakpoints()[k - 1];
        let from_left = p.pieces()[k - 1].iter().rev().fold(0.0, |acc, &c| acc * w + c);
        let from_right = p.pieces()[k][0];
        assert_relative_eq!(from_left, 2.0 / 3.0, max_relative = 1e-13);
        assert_relative_eq!(from_right, 2.0 / 3.0, max_relative = 1e-13);
    }

    #[test]
    fn time_values() {
        for m in 2..8 {
            assert_eq!(Envelope::sinc_power(m).unwrap().eval_time(0.0), 1.0);
        }
        let env = Envelope::sinc_power(4).unwrap();
        assert!(env.eval_time(4.0).abs() < 1e-60);
        assert_relative_eq!(env.eval_time(2.0), (2.0 / PI).powi(4), max_relative = 1e-14);
        assert_relative_eq!(Envelope::bump().eval_time(0.0), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn sinc_series_branch_is_continuous() {
        let x = 1e-4 / PI;
        let below = sinc(x * (1.0 - 1e-9));
        let above = sinc(x * (1.0 + 1e-9));
        assert!((below - above).abs() < 1e-15);
        assert_eq!(sinc(0.0), 1.0);
    }

    #[test]
    fn rejects_small_m() {
        assert!(matches!(Envelope::sinc_power(1), Err(Error::InvalidSincPower { m: 1 })));
        assert!(Envelope::sinc_power(0).is_err());
    }

    #[test]
    fn max_poly_order_rule() {
        assert_eq!(Envelope::sinc_power(4).unwrap().max_poly_order(), MaxOrder::Finite(3));
        assert_eq!(Envelope::sinc_power(2).unwrap().max_poly_order(), MaxOrder::Finite(1));
        assert_eq!(Envelope::bump().max_poly_order(), MaxOrder::Unlimited);
        assert_eq!(
            serde_json::to_string(&Envelope::bump().max_poly_order()).unwrap(),
            "\"unlimited\""
        );
    }

    #[test]
    fn derivative_examples() {
        let env = Envelope::sinc_power(4).unwrap();
        assert_eq!(env.eval_freq_deriv(1, 0.0).unwrap(), 0.0);
        let w = 2.2;
        let expect = 16.0 / PI.powi(3) / 3.0 * (PI - w).powi(3);
        assert_relative_eq!(env.eval_freq(w), expect, max_relative = 1e-13);

        let h = 1e-4;
        let x = 0.3;
        let fd = (env.eval_freq(x + h) - 2.0 * env.eval_freq(x) + env.eval_freq(x - h)) / (h * h);
        assert_relative_eq!(env.eval_freq_deriv(2, x).unwrap(), fd, max_relative = 1e-6);

        assert!(matches!(
            env.eval_freq_deriv(4, 0.1),
            Err(Error::DerivativeOrder { n: 4, max: 3 })
        ));
    }

    #[test]
    fn bump_edge_and_finite_differences() {
        let env = Envelope::bump();
        assert_eq!(env.eval_freq(PI), 0.0);
        assert_eq!(env.eval_freq(-PI), 0.0);
        // one-sided differences from inside shrink with the step
        let mut prev = f64::INFINITY;
        for h in [5e-2, 2e-2, 1e-2, 5e-3] {
            let d = (env.eval_freq(PI) - env.eval_freq(PI - h)) / h;
            assert!(d.abs() < prev);
            prev = d.abs();
        }
        assert!(prev < 1e-9);
    }

    #[test]
    fn bump_normalization_against_quadrature() {
        // independent quadrature of the raw bump, different panel layout
        let rule = gl32();
        let raw: f64 = rule.composite(-PI, PI, 400, |w: f64| {
            if w.abs() < PI {
                (-1.0 / (PI * PI - w * w)).exp()
            } else {
                0.0
            }
        });
        let env = Envelope::bump();
        assert_relative_eq!(env.normalization() * raw / (2.0 * PI), 1.0, max_relative = 1e-12);
        assert_relative_eq!(env.eval_time(0.0), 1.0, epsilon = 1e-13);
    }

    #[test]
    fn bump_second_derivative_vs_finite_difference() {
        let env = Envelope::bump();
        let fd = finite_difference_derivative(|w| env.eval_freq(w), 0.0, 2, &[]).unwrap();
        assert_relative_eq!(env.eval_freq_deriv(2, 0.0).unwrap(), fd, max_relative = 1e-6);
    }

    #[test]
    fn integral_is_two_pi_for_sinc_powers() {
        for m in 2..=9 {
            let env = Envelope::sinc_power(m).unwrap();
            assert_relative_eq!(env.piecewise().unwrap().integral(), 2.0 * PI, max_relative = 1e-10);
        }
    }

    #[test]
    fn breakpoint_continuity() {
        for m in 2..=9 {
            let env = Envelope::sinc_power(m).unwrap();
            let p = env.piecewise().unwrap();
            let bps = p.breakpoints();
            for k in 1..bps.len() - 1 {
                let w = bps[k] - bps[k - 1];
                for n in 0..=m - 2 {
                    let left = eval_local(&p.pieces()[k - 1], n, w);
                    let right = eval_local(&p.pieces()[k], n, 0.0);
                    let scale = left.abs().max(right.abs()).max(1.0);
                    assert!((left - right).abs() <= 1e-9 * scale, "m={m} k={k} n={n}: {left} vs {right}");
                }
            }
        }
    }

    fn eval_local(c: &[f64], n: usize, y: f64) -> f64 {
        let d: Vec<f64> = (n..c.len())
            .map(|k| ((k - n + 1)..=k).map(|j| j as f64).product::<f64>() * c[k])
            .collect();
        d.iter().rev().fold(0.0, |acc, &x| acc * y + x)
    }

    #[test]
    fn symmetry_of_raw_pieces() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for m in [3, 4, 5, 6] {
            let p = Envelope::sinc_power(m).unwrap();
            let p = p.piecewise().unwrap();
            for _ in 0..200 {
                let w: f64 = rng.gen_range(0.0..PI);
                for n in 0..m {
                    let a = p.eval_raw(n, w);
                    let b = p.eval_raw(n, -w);
                    if a.at_jump || b.at_jump {
                        continue;
                    }
                    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                    let scale = a.value.abs().max(1.0);
                    assert!((a.value - sign * b.value).abs() <= 1e-10 * scale, "m={m} n={n} w={w}");
                }
            }
        }
    }

    #[test]
    fn inverse_transform_matches_closed_form() {
        let env = Envelope::sinc_power(4).unwrap();
        let bps = env.breakpoints();
        let rule = gl32();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let t: f64 = rng.gen_range(-20.0..20.0);
            let mut acc = 0.0;
            for w in bps.windows(2) {
                acc += rule.integrate(w[0], w[1], |x| env.eval_freq(x) * (x * t).cos());
            }
            let v = acc / (2.0 * PI);
            assert!((v - env.eval_time(t)).abs() < 1e-9, "t={t}");
        }
    }

    #[test]
    fn sinc_power_decay_rate() {
        // |e(t)| |t|^m stays bounded: the running max stops growing
        for m in [3usize, 4, 6] {
            let env = Envelope::sinc_power(m).unwrap();
            let mut running = 0.0f64;
            let mut at_1e3 = 0.0;
            let mut t = 10.0f64;
            while t < 1e4 {
                running = running.max(env.eval_time(t).abs() * t.powi(m as i32));
                if t < 1e3 {
                    at_1e3 = running;
                }
                t += 0.37;
            }
            assert!(running <= at_1e3 * 1.001, "m={m}");
            // the bound is attained where |sin| = 1, up to rounding
            assert!(running <= (m as f64 / PI).powi(m as i32) * (1.0 + 1e-12));
        }
    }

    #[test]
    fn json_round_trip() {
        let env: Envelope = serde_json::from_str(r#"{"family":"sinc_power","m":4}"#).unwrap();
        assert_eq!(env.family(), EnvelopeFamily::SincPower { m: 4 });
        assert_eq!(serde_json::to_string(&Envelope::bump()).unwrap(), r#"{"family":"bump"}"#);
        assert!(serde_json::from_str::<Envelope>(r#"{"family":"sinc_power","m":1}"#).is_err());
    }
}
