//! The reference cubic: zeros at -0.1, 0, 0.1 on a sinc^4 envelope.
//!
//! Run with `cargo run --release --example fig1_cubic`.

use superosc::analysis::{amplitude_growth, find_zeros, superoscillation_certificate};
use superosc::presets;

fn main() {
    let spec = presets::fig1();
    let a = spec.interval().half_width();

    println!("f(t) = p(t) sinc^4(t/4), p(t) = {:?}", spec.poly().coeffs());
    for t in [-0.1, -0.05, 0.0, 0.05, 0.1] {
        println!("  f({t:>5}) = {:+.6e}   p = {:+.6e}", spec.eval(t), spec.poly().eval(t));
    }

    let zeros = find_zeros(&spec, -2.0 * a, 2.0 * a);
    println!("zeros near the interval: {zeros:?}");

    let cert = superoscillation_certificate(&spec).expect("three zeros inside");
    println!(
        "fastest local oscillation inside: {:.4} rad/unit, {:.2}x the band limit {:.4}",
        cert.min_frequency, cert.ratio, cert.band_limit
    );

    let amp = amplitude_growth(&spec);
    println!(
        "largest |f| anywhere: {:.2} at t = {:.4} (certified: {})",
        amp.max_abs, amp.t_max, amp.certified
    );
}
