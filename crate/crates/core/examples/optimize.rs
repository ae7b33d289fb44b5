//! Runs the optimizer on each benchmark function and prints the alpha
//! fitness every 50 iterations.
//!
//! cargo run --release --example optimize -- 30

use greywolf::objective::{by_name, SUITE};
use greywolf::{run_gwo, GwoConfig};

fn main() -> greywolf::Result<()> {
    let dim = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(10);
    let cfg = GwoConfig {
        agents: 30,
        iterations: 500,
        seed: 1,
        ..GwoConfig::default()
    };
    for name in SUITE {
        let f = by_name(name, dim)?;
        let out = run_gwo(f.as_ref(), &cfg)?;
        println!("{name} (D = {dim}): initial {:.4e}", out.initial_fitness);
        for (t, v) in out.trace.iter().enumerate().filter(|(t, _)| (t + 1) % 50 == 0) {
            println!("  t = {:>3}  {v:.4e}", t + 1);
        }
    }
    Ok(())
}
