//! Which polynomial order carries the spectrum? For small s the top order
//! dominates by about 1/s^2; at s = 1 the lower order catches up.

use superosc::analysis::spectrum_dominance;
use superosc::{presets, QuadConfig};

fn main() {
    let cfg = QuadConfig::default();
    for s in [0.05, 0.1, 0.2, 0.5, 1.0] {
        let report = spectrum_dominance(&presets::cubic(s), &cfg).expect("cubic on sinc^4");
        println!(
            "s = {s:<5} c1 = {:.4e}  c3 = {:.4e}  c3/c1 = {:>9.3}  dominant n = {}",
            report.norm(1),
            report.norm(3),
            report.ratio(3, 1),
            report.dominant_order()
        );
    }
    println!();
    print!("{}", spectrum_dominance(&presets::fig1(), &cfg).unwrap().to_csv());
}
