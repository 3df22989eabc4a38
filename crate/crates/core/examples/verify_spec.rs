//! Verify a spec given as JSON, the same format the command-line tool reads.

use superosc::verify::{verify_draft, VerifyConfig};
use superosc::SpecDraft;

const SPEC: &str = r#"{
    "poly": {"coeffs": [0.0, -0.0225, 0.0, 1.0]},
    "env": {"family": "sinc_power", "m": 5},
    "D": 2.0,
    "interval": {"a": 0.15}
}"#;

fn main() {
    let draft: SpecDraft = serde_json::from_str(SPEC).expect("well-formed spec");
    let report = verify_draft(&draft, &VerifyConfig::default()).expect("valid parameters");
    for check in &report.checks {
        println!("{:<30} {:<8} {}", check.name, format!("{:?}", check.status), check.detail);
    }
    println!("passed: {}", report.passed);

    // too smooth a demand for the envelope: reported, not an error
    let too_high = SPEC.replace("\"m\": 5", "\"m\": 3");
    let draft: SpecDraft = serde_json::from_str(&too_high).unwrap();
    let report = verify_draft(&draft, &VerifyConfig::default()).unwrap();
    println!("on sinc^3: {}", report.checks[0].detail);
}
