//! Runs every acceptance check at its stated tolerance and time budget.
//!
//! Prints one PASS/FAIL line per check; `cargo test --test acceptance --
//! --nocapture` shows them.

use std::time::{Duration, Instant};

use greywolf::verify::{CheckResult, Suite, VerifyConfig};

/// Wall-clock budget per check in seconds. Checks 7 and 8 share one
/// simulation, which is charged to 7.
const BUDGET: [f64; 10] = [5.0, 5.0, 30.0, 5.0, 60.0, 1.0, 60.0, 60.0, 60.0, 5.0];

fn run(suite: &Suite, id: u8) -> (CheckResult, Duration) {
    let start = Instant::now();
    let result = suite.check(id).expect("check ran");
    (result, start.elapsed())
}

#[test]
fn acceptance_suite() {
    let suite = Suite::new(VerifyConfig::default()).unwrap();
    let mut failed = Vec::new();
    println!();
    for id in 1..=10u8 {
        let (result, elapsed) = run(&suite, id);
        let budget = BUDGET[id as usize - 1];
        let in_time = elapsed.as_secs_f64() < budget;
        let ok = result.passed && in_time;
        println!(
            "{} [{:.2}s / {budget}s]",
            result.summary().replacen(
                if result.passed { "[PASS]" } else { "[FAIL]" },
                if ok { "[PASS]" } else { "[FAIL]" },
                1
            ),
            elapsed.as_secs_f64()
        );
        for note in &result.notes {
            println!("         {note}");
        }
        if !ok {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed checks: {failed:?}");
}
