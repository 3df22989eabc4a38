//! Size of each polynomial order's contribution to the spectrum.

use serde::Serialize;

use crate::error::Result;
use crate::quadrature::QuadConfig;
use crate::synthesis::SuperoscSpec;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Contribution {
    pub n: usize,
    /// `|| a_n i^n D^(n+1) E^(n)(D w) ||_2` over the support.
    pub norm: f64,
    /// `norm / norm_N`.
    pub ratio_to_top: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DominanceReport {
    pub contributions: Vec<Contribution>,
}

impl DominanceReport {
    pub fn norm(&self, n: usize) -> f64 {
        self.contributions.get(n).map_or(0.0, |c| c.norm)
    }

    /// `c_i / c_j`.
    pub fn ratio(&self, i: usize, j: usize) -> f64 {
        self.norm(i) / self.norm(j)
    }

    /// Order with the largest contribution.
    pub fn dominant_order(&self) -> usize {
        self.contributions
            .iter()
            .max_by(|a, b| a.norm.total_cmp(&b.norm))
            .map_or(0, |c| c.n)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,c_n,ratio_to_top\n");
        for c in &self.contributions {
            out.push_str(&format!("{},{},{}\n", c.n, c.norm, c.ratio_to_top));
        }
        out
    }
}

/// Substituting `x = D w`:
/// `c_n = |a_n| D^(n+1) (∫ E^(n)(x)^2 dx / D)^(1/2)`, with the energy
/// integral exact for sinc powers and by quadrature for the bump.
pub fn spectrum_dominance(spec: &SuperoscSpec, cfg: &QuadConfig) -> Result<DominanceReport> {
    let d = spec.dilation();
    let env = spec.envelope();
    let coeffs = spec.poly().coeffs();
    let mut norms = Vec::with_capacity(coeffs.len());
    for (n, &a) in coeffs.iter().enumerate() {
        let norm = if a == 0.0 {
            0.0
        } else {
            let energy = env.derivative_energy(n, cfg)?;
            a.abs() * d.powi(n as i32 + 1) * (energy / d).sqrt()
        };
        norms.push(norm);
    }
    let top = *norms.last().expect("polynomial has at least one coefficient");
    let contributions = norms
        .iter()
        .enumerate()
        .map(|(n, &norm)| Contribution {
            n,
            norm,
            ratio_to_top: if top > 0.0 { norm / top } else { 0.0 },
        })
        .collect();
    Ok(DominanceReport { contributions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envelope::Envelope;
    use crate::polynomial::{Interval, Polynomial};
    use crate::quadrature::integrate_segments;

    fn cubic(s: f64, d: f64) -> SuperoscSpec {
        SuperoscSpec::new(
            Polynomial::cubic_prototype(s).unwrap(),
            Envelope::sinc_power(4).unwrap(),
            d,
            Interval::new(s).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn norms_match_direct_quadrature_of_each_term() {
        let cfg = QuadConfig::with_tol(1e-12);
        for d in [1.0, 3.0] {
            let spec = cubic(0.2, d);
            let report = spectrum_dominance(&spec, &cfg).unwrap();
            let sp = spec.spectrum();
            for n in [1, 3] {
                let direct = integrate_segments(|w| sp.term(n, w).norm_sqr(), sp.breakpoints(), &cfg)
                    .value
                    .sqrt();
                assert!((report.norm(n) - direct).abs() <= 1e-9 * direct, "D={d} n={n}");
            }
            assert_eq!(report.norm(0), 0.0);
            assert_eq!(report.norm(2), 0.0);
        }
    }

    #[test]
    fn top_order_dominates_for_small_s() {
        let r = spectrum_dominance(&cubic(0.1, 1.0), &QuadConfig::default()).unwrap();
        let q = r.ratio(3, 1);
        assert!((10.0..=1000.0).contains(&q), "{q}");
        assert_eq!(r.dominant_order(), 3);
        assert_eq!(r.contributions[3].ratio_to_top, 1.0);
    }

    #[test]
    fn ratio_scales_like_inverse_s_squared() {
        let cfg = QuadConfig::default();
        let a = spectrum_dominance(&cubic(0.1, 1.0), &cfg).unwrap().ratio(1, 3);
        let b = spectrum_dominance(&cubic(0.05, 1.0), &cfg).unwrap().ratio(1, 3);
        assert!((a / b - 4.0).abs() < 1e-9);
    }

    #[test]
    fn constant_has_a_single_term() {
        let spec = SuperoscSpec::new(
            Polynomial::constant(2.0).unwrap(),
            Envelope::sinc_power(4).unwrap(),
            1.0,
            Interval::new(0.1).unwrap(),
        )
        .unwrap();
        let r = spectrum_dominance(&spec, &QuadConfig::default()).unwrap();
        assert_eq!(r.contributions.len(), 1);
        assert_eq!(r.contributions[0].ratio_to_top, 1.0);
        assert!(r.to_csv().starts_with("n,c_n,ratio_to_top\n0,"));
    }
}
