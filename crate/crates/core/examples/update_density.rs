//! Density of the updated coordinate `(x'_1 + x'_2 + x'_3) / 3` by exact
//! convolution, checked against samples.

use greywolf::dist::{pdf_h, GridSpec};
use greywolf::mc::{ks_critical, ks_statistic, sample_xnext_constant, trapezoid_cdf};

fn main() -> greywolf::Result<()> {
    let (a, p, x) = (2.0, [-0.30, 0.96, 2.24], -2.87);
    let h = pdf_h(&GridSpec::default(), a, p, x)?;
    let center = p.iter().sum::<f64>() / 3.0;
    println!(
        "support [{:.4}, {:.4}], {} nodes, integral {:.12}",
        h.lo(),
        h.hi(),
        h.len(),
        h.integral()
    );
    for k in 0..=10 {
        let u = h.lo() + k as f64 * (h.hi() - h.lo()) / 10.0;
        println!("  h({u:>7.3}) = {:.5}", h.eval(u));
    }
    let cdf = trapezoid_cdf(&h)?;
    println!("H(center = {center:.4}) = {:.6}", cdf.eval(center));

    let n = 100_000;
    let samples = sample_xnext_constant(a, p, x, n, 11)?;
    let ks = ks_statistic(&samples, |u| cdf.eval(u))?;
    println!("KS = {ks:.5} (critical {:.5})", ks_critical(n));
    Ok(())
}
