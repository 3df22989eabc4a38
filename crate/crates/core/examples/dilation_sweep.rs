//! Stretching the envelope flattens it over the interval: the L2 error of
//! f against p falls roughly like D^-2.

use superosc::analysis::dilation_sweep;
use superosc::{presets, QuadConfig};

fn main() {
    let spec = presets::fig1();
    let dilations: Vec<f64> = (0..7).map(|k| 2f64.powi(k)).collect();
    let sweep = dilation_sweep(&spec, &dilations, &QuadConfig::default()).expect("valid dilations");

    println!("{:>4}  {:>14}  {:>8}", "D", "l2 error", "reliable");
    for p in &sweep.points {
        println!("{:>4}  {:>14.6e}  {:>8}", p.dilation, p.report.l2_error, p.report.reliable);
    }
    let errors = sweep.errors();
    println!("strictly decreasing: {}", sweep.is_strictly_decreasing());
    println!("reduction D=1 -> D=64: {:.0}x", errors[0] / errors[errors.len() - 1]);
    if let Some(slope) = sweep.slope {
        println!("log-log slope: {slope:.4}");
    }
}
