//! Ready-made specs used by the examples, the CLI demo and the tests.

use crate::envelope::Envelope;
use crate::polynomial::{Interval, Polynomial};
use crate::synthesis::SuperoscSpec;

/// Cubic target with zeros at `-s, 0, s`, on `sinc^4(t/4)`, `D = 1`.
pub fn cubic(s: f64) -> SuperoscSpec {
    cubic_with(s, 4, 1.0)
}

pub fn cubic_with(s: f64, m: usize, dilation: f64) -> SuperoscSpec {
    SuperoscSpec::new(
        Polynomial::cubic_prototype(s).expect("positive scale"),
        Envelope::sinc_power(m).expect("m >= 2"),
        dilation,
        Interval::new(s).expect("positive half-width"),
    )
    .expect("a cubic fits every sinc power from 4 up")
}

/// The reference configuration: `s = 0.1`, `sinc^4`, `D = 1`, `a = 0.1`.
pub fn fig1() -> SuperoscSpec {
    cubic(0.1)
}

/// [`fig1`] on `sinc^5`, one order of smoothness to spare.
pub fn fig1_sinc5() -> SuperoscSpec {
    cubic_with(0.1, 5, 1.0)
}

/// The envelope alone: `p = 1` on `sinc^4`.
pub fn constant_sinc4() -> SuperoscSpec {
    SuperoscSpec::new(
        Polynomial::constant(1.0).expect("finite"),
        Envelope::sinc_power(4).expect("m >= 2"),
        1.0,
        Interval::new(0.1).expect("positive half-width"),
    )
    .expect("constant is always admissible")
}

/// Zeros at `0.05, 0.1, 0.15` on `sinc^5`.
pub fn roots_sinc5() -> SuperoscSpec {
    SuperoscSpec::new(
        Polynomial::from_roots(&[1.0, 2.0, 3.0], 0.05, 1.0).expect("finite roots"),
        Envelope::sinc_power(5).expect("m >= 2"),
        1.0,
        Interval::new(0.35).expect("positive half-width"),
    )
    .expect("degree 3 on sinc^5")
}

/// Degree 6 on the bump with `p(0) = 1`: a superoscillating pair of zeros
/// at `±0.4`, gap `0.8 < 1`, and the remaining zeros out at `±4, ±8`.
///
/// Spreading the outer zeros keeps the leading coefficient near `0.006`.
/// The bump's high derivatives are large, and the spectrum's L1 norm sets
/// the rounding floor of every Fourier-side check.
pub fn bump_sextic() -> SuperoscSpec {
    SuperoscSpec::new(
        Polynomial::from_roots(&[-20.0, -10.0, -1.0, 1.0, 10.0, 20.0], 0.4, -1.0 / 40000.0)
            .expect("finite roots"),
        Envelope::bump(),
        1.0,
        Interval::new(0.5).expect("positive half-width"),
    )
    .expect("the bump admits any degree")
}

/// Every preset with its name.
pub fn all() -> Vec<(&'static str, SuperoscSpec)> {
    vec![
        ("fig1", fig1()),
        ("fig1_sinc5", fig1_sinc5()),
        ("constant_sinc4", constant_sinc4()),
        ("roots_sinc5", roots_sinc5()),
        ("bump_sextic", bump_sextic()),
    ]
}

pub fn by_name(name: &str) -> Option<SuperoscSpec> {
    all().into_iter().find(|(n, _)| *n == name).map(|(_, s)| s)
}
