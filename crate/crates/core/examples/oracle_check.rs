//! Cross-check the analytic spectrum against numerical Fourier transforms
//! and the energy identity.

use superosc::analysis::energy_parseval_check;
use superosc::oracle::inverse_transform_point;
use superosc::{presets, QuadConfig};

fn main() {
    let cfg = QuadConfig::default();
    for (name, spec) in presets::all() {
        let sp = spec.spectrum();
        let worst = [-7.3, -2.0, -0.05, 0.0, 0.08, 1.5, 9.9]
            .iter()
            .map(|&t| (inverse_transform_point(&sp, t, &cfg).value.re - spec.eval(t)).abs())
            .fold(0.0, f64::max);
        let energy = energy_parseval_check(&spec, &cfg);
        println!(
            "{name:<15} inverse vs direct {worst:.2e}   energy gap {:.2e} ({:?}, margin {})",
            energy.relative_gap, energy.authority, energy.decay_margin
        );
    }
}
