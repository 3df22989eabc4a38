//! The price of superoscillation: max |f| grows like (D/s)^N.

use superosc::analysis::{amplitude_growth, least_squares_slope};
use superosc::presets;

fn main() {
    let scales = [0.2, 0.1, 0.05, 0.025];
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    println!("{:>6}  {:>14}  {:>10}", "s", "max |f|", "at t");
    for s in scales {
        let amp = amplitude_growth(&presets::cubic(s));
        println!("{s:>6}  {:>14.6e}  {:>10.4}", amp.max_abs, amp.t_max);
        xs.push((1.0 / s).ln());
        ys.push(amp.max_abs.ln());
    }
    let slope = least_squares_slope(&xs, &ys).expect("distinct scales");
    println!("slope of ln max|f| against ln(1/s): {slope:.4} (cubic, so about 3)");
}
