//! Pick the target shape by least squares instead of by roots: fit a
//! degree-5 polynomial to one period of sin(pi t / a) over the interval, then put it on
//! a sinc^6 envelope.

use std::f64::consts::PI;

use superosc::analysis::{l2_error, superoscillation_certificate};
use superosc::{fit_polynomial, Envelope, Interval, SuperoscSpec};

fn main() {
    let a = 0.25;
    let interval = Interval::new(a).unwrap();
    let target = |t: f64| (PI * t / a).sin();
    let samples: Vec<(f64, f64)> = (0..400)
        .map(|i| {
            let t = -a + 2.0 * a * (i as f64 + 0.5) / 400.0;
            (t, target(t))
        })
        .collect();

    let fit = fit_polynomial(&samples, 5, interval).expect("well-posed fit");
    println!("coefficients: {:?}", fit.poly.coeffs());
    println!("fit residual (L2 over the interval): {:.3e}", fit.residual_l2);

    let spec = SuperoscSpec::new(fit.poly, Envelope::sinc_power(6).unwrap(), 4.0, interval).unwrap();
    println!("f against p on the interval: {:.3e}", l2_error(&spec).l2_error);
    match superoscillation_certificate(&spec) {
        Ok(c) => println!(
            "{} zeros inside, local frequency {:.2}x the band limit",
            c.zeros.len(),
            c.ratio
        ),
        Err(e) => println!("no certificate: {e}"),
    }
}
