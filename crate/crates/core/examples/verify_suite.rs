//! Runs the acceptance checks at a chosen trial count and prints the report.
//!
//! cargo run --release --example verify_suite -- 20000

use greywolf::verify::{Suite, VerifyConfig};

fn main() -> greywolf::Result<()> {
    let trials = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100_000);
    let suite = Suite::new(VerifyConfig { trials, ..VerifyConfig::default() })?;
    let report = suite.run_all()?;
    if report.low_power {
        println!("low power: limits widened by {:.2}", report.tolerance_scale);
    }
    for check in &report.checks {
        println!("{}", check.summary());
        for note in &check.notes {
            println!("       {note}");
        }
    }
    println!("all passed: {}", report.passed());
    Ok(())
}
