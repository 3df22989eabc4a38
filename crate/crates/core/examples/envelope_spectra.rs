//! Envelope transforms: exact piecewise sinc powers and the smooth bump.

use std::f64::consts::PI;

use superosc::{Envelope, MaxOrder};

fn describe(name: &str, env: &Envelope) {
    let order = match env.max_poly_order() {
        MaxOrder::Finite(n) => n.to_string(),
        MaxOrder::Unlimited => "unlimited".into(),
    };
    println!("{name:<8} max polynomial order {order:>9}   E(0) = {:.12}", env.eval_freq(0.0));
    for t in [0.0, 1.0, 10.0, 100.0] {
        println!("         e({t:>5}) = {:+.6e}  bound {:.3e}", env.eval_time(t), env.decay_bound(t));
    }
}

fn main() {
    for m in 2..=6 {
        let env = Envelope::sinc_power(m).unwrap();
        describe(&format!("sinc^{m}"), &env);
        let pieces = env.piecewise().unwrap();
        println!("         breakpoints {:?}", pieces.breakpoints().iter().map(|b| b / PI).collect::<Vec<_>>());
    }
    let bump = Envelope::bump();
    describe("bump", &bump);

    // sinc^4 at w = 0 is 8/3; the two pieces meet at pi/2 with value 2/3
    let s4 = Envelope::sinc_power(4).unwrap();
    println!("sinc^4: E(0) = {}, E(pi/2) = {}", s4.eval_freq(0.0), s4.eval_freq(PI / 2.0));
    for n in 0..=3 {
        println!("  E^({n})(1.0) = {:+.12}", s4.eval_freq_deriv(n, 1.0).unwrap());
    }
}
