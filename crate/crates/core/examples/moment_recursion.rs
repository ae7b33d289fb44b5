//! Central moments of a stagnating agent from the exact recursion.

use greywolf::moments::{moment_trajectory, PTriple};

fn main() -> greywolf::Result<()> {
    let p = PTriple::new(-1.0, 1.5, 2.5)?;
    let traj = moment_trajectory(6, &p, 60, (-4.0, 4.0))?;
    println!("center {:.4}, p0 {:.4}", traj.center, p.p0());
    println!("{:>3} {:>10} {:>12} {:>12} {:>12}", "t", "mean", "sigma2", "sigma4", "sigma6");
    for t in [1, 2, 3, 5, 10, 20, 30, 40, 50, 59, 60] {
        println!(
            "{t:>3} {:>10.5} {:>12.5e} {:>12.5e} {:>12.5e}",
            traj.mean(t),
            traj.central(t, 2),
            traj.central(t, 4),
            traj.central(t, 6)
        );
    }
    Ok(())
}
