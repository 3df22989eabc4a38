//! Exact piecewise-polynomial transforms of sinc-power envelopes.

use std::f64::consts::PI;
use std::fmt::Write as _;

/// A compactly supported piecewise polynomial.
///
/// Piece `i` covers `[breakpoints[i], breakpoints[i + 1]]` and stores its
/// coefficients in the local variable `x - breakpoints[i]`. The function is
/// zero outside `[breakpoints[0], breakpoints[last]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewisePolySpectrum {
    breakpoints: Vec<f64>,
    pieces: Vec<Vec<f64>>,
}

/// A derivative value, flagged when it sits on a jump of that derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeValue {
    pub value: f64,
    /// Set when `value` is the mean of two different one-sided limits.
    pub at_jump: bool,
}

impl PiecewisePolySpectrum {
    /// Transform of `sinc^m(t / m)` on `[-pi, pi]`.
    ///
    /// Starts from the transform of `sinc(t / m)` (height `m` on
    /// `|w| <= pi / m`) and convolves with it `m - 1` more times, each
    /// product in time contributing a `1 / 2pi` factor. Every convolution
    /// with a rectangle of half-width `W` is `G(x + W) - G(x - W)` for the
    /// antiderivative `G`; since all breakpoints sit on a grid of spacing
    /// `2W`, each new piece is a difference of two old antiderivative pieces
    /// in the same local variable and no Taylor shifts are needed.
    pub fn sinc_power(m: usize) -> Self {
        assert!(m >= 1);
        let half = PI / m as f64;
        let height = m as f64;
        let step = 2.0 * half;

        let mut pieces: Vec<Vec<f64>> = vec![vec![height]];
        for factors in 1..m {
            let anti = antiderivatives(&pieces, step);
            let total = anti.last().map_or(0.0, |(_, end)| *end);
            let scale = height / (2.0 * PI);
            let mut next = Vec::with_capacity(pieces.len() + 1);
            for j in 0..=pieces.len() {
                let upper: Vec<f64> = match anti.get(j) {
                    Some((g, _)) => g.clone(),
                    None => vec![total],
                };
                let lower: &[f64] = if j == 0 { &[] } else { &anti[j - 1].0 };
                let len = upper.len().max(lower.len());
                let piece = (0..len)
                    .map(|k| {
                        let u = upper.get(k).copied().unwrap_or(0.0);
                        let l = lower.get(k).copied().unwrap_or(0.0);
                        scale * (u - l)
                    })
                    .collect();
                next.push(piece);
            }
            pieces = next;
            debug_assert_eq!(pieces.len(), factors + 1);
        }

        let count = pieces.len();
        let breakpoints = (0..=count)
            .map(|j| -(count as f64) * half + j as f64 * step)
            .collect();
        PiecewisePolySpectrum {
            breakpoints,
            pieces,
        }
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Vec<f64>] {
        &self.pieces
    }

    /// Highest polynomial degree over the pieces.
    pub fn degree(&self) -> usize {
        self.pieces.iter().map(|p| p.len() - 1).max().unwrap_or(0)
    }

    pub fn support(&self) -> (f64, f64) {
        (self.breakpoints[0], *self.breakpoints.last().unwrap())
    }

    /// `n`-th derivative evaluated directly from the piece containing `x`.
    ///
    /// At an interior breakpoint the two one-sided limits are averaged; the
    /// result is flagged when they differ.
    pub fn eval_raw(&self, n: usize, x: f64) -> DerivativeValue {
        let (lo, hi) = self.support();
        if x < lo || x > hi || x.is_nan() {
            return DerivativeValue {
                value: 0.0,
                at_jump: false,
            };
        }
        let idx = self.breakpoints.partition_point(|&b| b <= x);
        // idx is the index of the first breakpoint strictly greater than x
        let on_break = self.breakpoints[idx - 1] == x;
        if on_break {
            let k = idx - 1;
            let right = if k < self.pieces.len() {
                eval_local_derivative(&self.pieces[k], n, 0.0)
            } else {
                0.0
            };
            let left = if k > 0 {
                let w = self.breakpoints[k] - self.breakpoints[k - 1];
                eval_local_derivative(&self.pieces[k - 1], n, w)
            } else {
                0.0
            };
            let jump = (left - right).abs() > 1e-12 * left.abs().max(right.abs()).max(1e-300);
            return DerivativeValue {
                value: if jump { 0.5 * (left + right) } else { right },
                at_jump: jump,
            };
        }
        let k = idx - 1;
        DerivativeValue {
            value: eval_local_derivative(&self.pieces[k], n, x - self.breakpoints[k]),
            at_jump: false,
        }
    }

    /// `n`-th derivative using the even symmetry of the spectrum.
    ///
    /// Evaluation always happens on the left half, where the outermost piece
    /// is an exact monomial in the distance to the support edge, so values
    /// near `±pi` keep full relative precision.
    pub fn eval(&self, n: usize, x: f64) -> DerivativeValue {
        if x == 0.0 && n % 2 == 1 {
            // odd derivatives of an even function; exact even across a jump
            return DerivativeValue {
                value: 0.0,
                at_jump: false,
            };
        }
        let folded = -x.abs();
        let mut v = self.eval_raw(n, folded);
        if x > 0.0 && n % 2 == 1 {
            v.value = -v.value;
        }
        v
    }

    /// Left and right limits of the `n`-th derivative at breakpoint `k`.
    pub fn one_sided(&self, n: usize, k: usize) -> (f64, f64) {
        let left = match k.checked_sub(1) {
            Some(j) => {
                let w = self.breakpoints[k] - self.breakpoints[j];
                eval_local_derivative(&self.pieces[j], n, w)
            }
            None => 0.0,
        };
        let right = self.pieces.get(k).map_or(0.0, |c| eval_local_derivative(c, n, 0.0));
        (left, right)
    }

    /// Exact integral over the support.
    pub fn integral(&self) -> f64 {
        self.pieces
            .iter()
            .zip(self.breakpoints.windows(2))
            .map(|(c, w)| integrate_local(c, w[1] - w[0]))
            .sum()
    }

    /// Exact `∫ (d^n/dx^n E)^2 dx` over the support.
    pub fn derivative_energy(&self, n: usize) -> f64 {
        self.pieces
            .iter()
            .zip(self.breakpoints.windows(2))
            .map(|(c, w)| {
                let d = differentiate_local(c, n);
                integrate_local(&square(&d), w[1] - w[0])
            })
            .sum()
    }

    /// CSV with one row per piece: `left,right,c0,c1,...`.
    pub fn to_csv(&self) -> String {
        let degree = self.degree();
        let mut out = String::from("left,right");
        for k in 0..=degree {
            let _ = write!(out, ",c{k}");
        }
        out.push('\n');
        for (c, w) in self.pieces.iter().zip(self.breakpoints.windows(2)) {
            let _ = write!(out, "{},{}", w[0], w[1]);
            for k in 0..=degree {
                let _ = write!(out, ",{}", c.get(k).copied().unwrap_or(0.0));
            }
            out.push('\n');
        }
        out
    }
}

/// Antiderivative of each piece, accumulated from the left. Returns the
/// local coefficients and the running total at the right end of each piece.
fn antiderivatives(pieces: &[Vec<f64>], width: f64) -> Vec<(Vec<f64>, f64)> {
    let mut acc = 0.0;
    pieces
        .iter()
        .map(|c| {
            let mut g = Vec::with_capacity(c.len() + 1);
            g.push(acc);
            g.extend(c.iter().enumerate().map(|(k, &ck)| ck / (k + 1) as f64));
            acc = horner(&g, width);
            (g, acc)
        })
        .collect()
}

fn horner(c: &[f64], y: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &ck| acc * y + ck)
}

fn differentiate_local(c: &[f64], n: usize) -> Vec<f64> {
    if n >= c.len() {
        return vec![0.0];
    }
    (n..c.len())
        .map(|k| {
            let falling: f64 = ((k - n + 1)..=k).map(|j| j as f64).product();
            falling * c[k]
        })
        .collect()
}

fn eval_local_derivative(c: &[f64], n: usize, y: f64) -> f64 {
    horner(&differentiate_local(c, n), y)
}

fn integrate_local(c: &[f64], width: f64) -> f64 {
    c.iter()
        .enumerate()
        .rev()
        .fold(0.0, |acc, (k, &ck)| acc * width + ck / (k + 1) as f64)
        * width
}

fn square(c: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; 2 * c.len() - 1];
    for (i, a) in c.iter().enumerate() {
        for (j, b) in c.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn closed_form_m4(w: f64) -> f64 {
        let a = w.abs();
        let k = 16.0 / PI.powi(3);
        if a <= PI / 2.0 {
            k * (a.powi(3) - PI * w * w + PI.powi(3) / 6.0)
        } else if a <= PI {
            k * (PI - a).powi(3) / 3.0
        } else {
            0.0
        }
    }

    #[test]
    fn m4_matches_closed_form() {
        let s = PiecewisePolySpectrum::sinc_power(4);
        assert_eq!(s.breakpoints().len(), 5);
        assert_relative_eq!(s.eval(0, 0.0).value, 8.0 / 3.0, max_relative = 1e-14);
        for i in 0..=400 {
            let w = -PI + 2.0 * PI * i as f64 / 400.0;
            let expect = closed_form_m4(w);
            let got = s.eval(0, w).value;
            assert!(
                (got - expect).abs() <= 1e-13 * expect.abs().max(1e-300) || expect == 0.0 && got == 0.0,
                "w={w}: {got} vs {expect}"
            );
        }
    }

    #[test]
    fn m2_is_a_triangle() {
        let s = PiecewisePolySpectrum::sinc_power(2);
        // transform of sinc^2(t/2): 2 (1 - |w| / pi) on [-pi, pi]
        for w in [-3.0, -1.0, 0.0, 0.5, 2.0] {
            assert_relative_eq!(s.eval(0, w).value, 2.0 * (1.0 - f64::abs(w) / PI), epsilon = 1e-14);
        }
    }

    #[test]
    fn integral_is_two_pi() {
        for m in 2..=10 {
            let s = PiecewisePolySpectrum::sinc_power(m);
            assert_relative_eq!(s.integral(), 2.0 * PI, max_relative = 1e-10);
        }
    }

    #[test]
    fn jump_flagged_only_on_top_derivative() {
        let s = PiecewisePolySpectrum::sinc_power(4);
        let top = s.eval(3, PI / 2.0);
        assert!(top.at_jump);
        // one-sided limits of E''' at pi/2 are 96/pi^3 and -32/pi^3... averaged
        let k = 16.0 / PI.powi(3);
        assert_relative_eq!(top.value, 0.5 * (6.0 * k - 2.0 * k), max_relative = 1e-12);
        assert!(!s.eval(2, PI / 2.0).at_jump);
        assert!(s.eval(3, -PI).at_jump);
        assert_eq!(s.eval(3, 4.0).value, 0.0);
    }

    #[test]
    fn csv_has_one_row_per_piece() {
        let csv = PiecewisePolySpectrum::sinc_power(3).to_csv();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "left,right,c0,c1,c2");
        assert_eq!(lines.len(), 4);
    }
}
