//! Boxes that contain the intermediate vectors and the updated position, and
//! how the samples fill them.

use greywolf::dist::{box_di, box_dk};
use greywolf::mc::{sample_xnext_vec, sample_xprime_vec};

fn main() -> greywolf::Result<()> {
    let (p, x) = ([1.0, 1.0], [1.5, 3.0]);
    for a in [2.0, 0.5] {
        let b = box_dk(a, &p, &x)?;
        let samples = sample_xprime_vec(a, &p, &x, 5000, 5)?;
        let inside = samples.iter().filter(|s| b.contains(s)).count();
        println!("a = {a}: x'_k box widths {:?}, {inside}/5000 samples inside", b.widths());
    }

    let (p1, p2, p3) = ([0.0, 0.0], [0.0, 1.0], [1.0, 0.0]);
    let b = box_di(2.0, &p1, &p2, &p3, &x)?;
    let samples = sample_xnext_vec(2.0, [&p1, &p2, &p3], &x, 5000, 6)?;
    let (c, h) = (b.centers(), b.half_widths());
    let central = samples
        .iter()
        .filter(|s| (0..2).all(|j| (s[j] - c[j]).abs() <= 0.5 * h[j]))
        .count();
    println!("x(t+1) box: center {c:?}, half-widths {h:?}");
    println!("  {central}/5000 samples in the central quarter (uniform would give 1250)");
    Ok(())
}
