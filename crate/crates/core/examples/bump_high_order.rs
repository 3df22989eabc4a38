//! The bump envelope has a smooth transform, so any polynomial degree is
//! admissible. A degree-6 target through the full verification suite.

use superosc::analysis::spectrum_dominance;
use superosc::verify::{verify, VerifyConfig};
use superosc::{admissibility_check, presets, Envelope, Polynomial, QuadConfig};

fn main() {
    let high = Polynomial::new(vec![1.0; 13]).unwrap();
    println!("degree 12 on the bump: {:?}", admissibility_check(&high, &Envelope::bump()));
    println!("degree 12 on sinc^7:   {:?}", admissibility_check(&high, &Envelope::sinc_power(7).unwrap()));

    let spec = presets::bump_sextic();
    let dominance = spectrum_dominance(&spec, &QuadConfig::default()).unwrap();
    for c in &dominance.contributions {
        if c.norm > 0.0 {
            println!("  order {}: spectral norm {:.3e}", c.n, c.norm);
        }
    }

    let report = verify(&spec, &VerifyConfig::default());
    for check in &report.checks {
        println!("{:<30} {:?}", check.name, check.status);
    }
    println!("passed: {}", report.passed);
}
