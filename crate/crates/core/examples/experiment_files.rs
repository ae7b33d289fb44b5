//! Writes the files behind the published figures and reads them back.

use greywolf::dist::GridCurve;
use greywolf::harness::{cmd_dist, cmd_moments, io, preset, ExperimentConfig};

fn main() -> greywolf::Result<()> {
    let out = std::env::temp_dir().join("greywolf-experiment-files");
    for name in ["fig4a", "fig6g", "table2"] {
        match preset(name)? {
            ExperimentConfig::Dist(mut c) => {
                c.out = out.clone();
                println!("{name}: {:?}", cmd_dist(&c)?);
            }
            ExperimentConfig::Moments(mut c) => {
                c.out = out.clone();
                c.order = 4;
                println!("{name}: {:?}", cmd_moments(&c)?);
            }
            _ => unreachable!(),
        }
    }
    let (g, meta) = GridCurve::load(&out, "fig4a_g_pdf")?;
    println!("fig4a g support [{}, {}], integral {:.6}", meta.lo, meta.hi, g.integral());
    let table = io::Table::read(&out.join("table2_table2.csv"))?;
    println!("table2 |D_T - D_0|: {:?}", table.column("abs_DT_minus_D0").unwrap());
    let hist = io::read_histogram(&out.join("fig6g_hist.csv"))?;
    println!("fig6g histogram: {} samples, peak bin {}", hist.total, hist.peak());
    Ok(())
}
