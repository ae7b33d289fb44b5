//! Monte-Carlo agents under frozen leaders against the exact variance
//! recursion; the result does not depend on the worker count.

use greywolf::mc::{simulate_stagnation_with, SimConfig};
use greywolf::moments::{variance_sequence, PTriple};

fn main() -> greywolf::Result<()> {
    let p = PTriple::new(-1.0, 1.5, 2.5)?;
    let mut cfg = SimConfig::stagnation(vec![p], 60, 100_000, 2024);
    cfg.retain_cap = 0;
    let run = simulate_stagnation_with(&cfg, Some(2))?;
    let exact = variance_sequence(&p, 60, (-4.0, 4.0))?;
    println!("{:>3} {:>10} {:>10} {:>12} {:>12}", "t", "mean", "se", "var", "recursion");
    for t in [1, 2, 5, 10, 20, 30, 40, 50, 59] {
        let s = run.stats(0, t);
        println!(
            "{t:>3} {:>10.5} {:>10.2e} {:>12.5e} {:>12.5e}",
            s.mean,
            s.se_mean,
            s.var,
            exact.at(t)
        );
    }
    let again = simulate_stagnation_with(&cfg, Some(1))?;
    println!("identical with one worker: {}", again.stats == run.stats);
    Ok(())
}
