//! Density and distribution function of one guided step `p + A |C p - x|`
//! next to a Monte-Carlo histogram of the same step.

use greywolf::dist::{cdf_g, mn_params, pdf_g, support_g};
use greywolf::mc::{ks_critical, ks_statistic, sample_xprime, Histogram};

fn main() -> greywolf::Result<()> {
    for (a, p, x) in [(2.0, 1.0, 3.0), (2.0, 1.0, 0.5), (0.5, 1.0, 3.0), (0.5, 1.0, 0.5)] {
        let sp = mn_params(a, p, x)?;
        let (lo, hi) = support_g(&sp).expect("non-degenerate");
        let shape = if sp.m > 0.0 { "flat top" } else { "log pole at p" };
        println!("a = {a}, p = {p}, x = {x}: m = {}, n = {}, support ({lo}, {hi}), {shape}", sp.m, sp.n);

        let n = 100_000;
        let samples = sample_xprime(a, p, x, n, 3)?;
        let hist = Histogram::from_samples(&samples, lo, hi, 12)?;
        let w = hist.width();
        for (i, &count) in hist.counts.iter().enumerate() {
            let (l, r) = (lo + i as f64 * w, lo + (i + 1) as f64 * w);
            let exact = cdf_g(r, &sp)? - cdf_g(l, &sp)?;
            println!(
                "  [{l:>6.2}, {r:>6.2})  observed {:.4}  exact {exact:.4}  pdf(mid) {:.4}",
                count as f64 / n as f64,
                pdf_g(0.5 * (l + r), &sp)?
            );
        }
        let ks = ks_statistic(&samples, |u| cdf_g(u, &sp).unwrap())?;
        println!("  KS = {ks:.5} (critical {:.5})\n", ks_critical(n));
    }
    Ok(())
}
