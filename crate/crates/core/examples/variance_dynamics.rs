//! Variance recursion `D(t+1) = b(t) (D(t) + p0)`, its moving attractor and
//! the terminal variance for growing iteration budgets.

use greywolf::moments::{attractor_d0, stability_bounds, variance_sequence, PTriple};

fn main() -> greywolf::Result<()> {
    let base = PTriple::new(-1.0, 1.5, 2.5)?;
    for p0 in [2.20, 1.41] {
        let p = base.scaled_to_p0(p0)?;
        let total = 50;
        let d = variance_sequence(&p, total, (-4.0, 4.0))?;
        println!("p0 = {p0}: leaders ({:.4}, {:.4}, {:.4})", p.p1, p.p2, p.p3);
        for t in (5..total).step_by(5) {
            let (env, _) = stability_bounds(d.at(1), t, &p, total)?;
            println!(
                "  t = {t:>2}  D(t+1) = {:.5}  D0(t) = {:.5}  envelope {env:.3e}",
                d.at(t + 1),
                attractor_d0(t, total, &p)?
            );
        }
    }

    let p = base.scaled_to_p0(2.20)?;
    println!("\n  T   |D_T - D_0|   bound");
    for total in [20, 30, 50, 100, 200, 500] {
        let d = variance_sequence(&p, total, (-4.0, 4.0))?;
        let (_, bound) = stability_bounds(d.at(1), total, &p, total)?;
        println!("{total:>4}   {:.4e}   {bound:.4e}", d.terminal());
    }
    Ok(())
}
