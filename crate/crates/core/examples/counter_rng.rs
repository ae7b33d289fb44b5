//! Random numbers addressed by (seed, stream, iteration, dimension): any
//! slot can be read directly without replaying the ones before it.

use greywolf::rng::{domain, CounterRng};
use rand::Rng;

fn main() {
    let gen = CounterRng::new(42, domain::STAGNATION);
    let dims = 3;
    let mut walk = gen.stream(7);
    walk.set_word_pos(5 * dims as u128 * 12);
    let sequential: Vec<f64> = (0..6).map(|_| walk.random()).collect();
    let mut direct = gen.slot(7, 5, 0, dims);
    let jumped: Vec<f64> = (0..6).map(|_| direct.random()).collect();
    println!("stream 7, slot (5, 0): {sequential:.4?}");
    println!("same slot read directly: {}", sequential == jumped);

    let other = CounterRng::new(42, domain::OPTIMIZER).slot(7, 5, 0, dims).random::<f64>();
    println!("another domain with the same seed starts at {other:.4}");
}
