//! Direct draws of the guided step and of the updated coordinate with the
//! agent position held fixed.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gwo::update_coordinate;
use crate::rng::{domain, CounterRng};

/// Samples per random stream.
pub const BATCH: usize = 1024;

fn check_inputs(a: f64, count: usize) -> Result<()> {
    if !a.is_finite() || a < 0.0 {
        return Err(Error::arg("a", format!("must be finite and >= 0, got {a}")));
    }
    if count == 0 {
        return Err(Error::arg("count", "must be positive"));
    }
    Ok(())
}

/// Fills `count` draws, batch `b` reading stream `b` of `(seed, tag)`.
fn batched(count: usize, seed: u64, tag: u64, draw: impl Fn(&mut ChaCha8Rng) -> f64 + Sync) -> Vec<f64> {
    let gen = CounterRng::new(seed, tag);
    let mut out = vec![0.0; count];
    out.par_chunks_mut(BATCH).enumerate().for_each(|(b, chunk)| {
        let mut rng = gen.stream(b as u64);
        chunk.iter_mut().for_each(|v| *v = draw(&mut rng));
    });
    out
}

/// One guided step `p + A |C p - x|`, `A` drawn before `C`.
#[inline]
pub fn guided_step<R: Rng + ?Sized>(a: f64, p: f64, x: f64, rng: &mut R) -> f64 {
    let big_a = a * (2.0 * rng.random::<f64>() - 1.0);
    let big_c = 2.0 * rng.random::<f64>();
    p + big_a * (big_c * p - x).abs()
}

pub fn sample_xprime(a: f64, p: f64, x: f64, count: usize, seed: u64) -> Result<Vec<f64>> {
    check_inputs(a, count)?;
    Ok(batched(count, seed, domain::XPRIME, |rng| guided_step(a, p, x, rng)))
}

pub fn sample_xnext_constant(a: f64, p: [f64; 3], x: f64, count: usize, seed: u64) -> Result<Vec<f64>> {
    check_inputs(a, count)?;
    Ok(batched(count, seed, domain::XNEXT, |rng| update_coordinate(x, p, a, rng)))
}

/// Vector draws of `x'_k` for leader `p`; coordinates use independent
/// sub-seeds.
pub fn sample_xprime_vec(a: f64, p: &[f64], x: &[f64], count: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    if p.len() != x.len() {
        return Err(Error::arg("x", "dimension differs from leader"));
    }
    let cols = p
        .iter()
        .zip(x)
        .enumerate()
        .map(|(j, (&pj, &xj))| sample_xprime(a, pj, xj, count, seed.wrapping_add(j as u64 * 0x9E37_79B9)))
        .collect::<Result<Vec<_>>>()?;
    Ok(transpose(&cols, count))
}

/// Vector draws of the updated position with leaders `p1, p2, p3` and agent
/// `x` fixed.
pub fn sample_xnext_vec(
    a: f64,
    leaders: [&[f64]; 3],
    x: &[f64],
    count: usize,
    seed: u64,
) -> Result<Vec<Vec<f64>>> {
    if leaders.iter().any(|p| p.len() != x.len()) {
        return Err(Error::arg("x", "dimension differs from leaders"));
    }
    let cols = (0..x.len())
        .map(|j| {
            let p = [leaders[0][j], leaders[1][j], leaders[2][j]];
            sample_xnext_constant(a, p, x[j], count, seed.wrapping_add(j as u64 * 0x9E37_79B9))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(transpose(&cols, count))
}

fn transpose(cols: &[Vec<f64>], count: usize) -> Vec<Vec<f64>> {
    (0..count).map(|i| cols.iter().map(|c| c[i]).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::{box_di, mn_params};

    #[test]
    fn xprime_support_and_symmetry() {
        let sp = mn_params(2.0, 1.0, 3.0).unwrap();
        let s = sample_xprime(2.0, 1.0, 3.0, 50_000, 9).unwrap();
        assert!(s.iter().all(|&v| (v - 1.0).abs() < sp.n));
        let n = s.len() as f64;
        let mean = s.iter().sum::<f64>() / n;
        let var = s.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        assert!((mean - 1.0).abs() < 4.0 * (var / n).sqrt());
    }

    #[test]
    fn reproducible_by_seed() {
        let a = sample_xnext_constant(1.0, [0.1, 0.2, 0.3], 2.0, 3000, 5).unwrap();
        let b = sample_xnext_constant(1.0, [0.1, 0.2, 0.3], 2.0, 3000, 5).unwrap();
        let c = sample_xnext_constant(1.0, [0.1, 0.2, 0.3], 2.0, 3000, 6).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn xnext_inside_box() {
        let (p1, p2, p3, x) = ([0.0, 0.0], [0.0, 1.0], [1.0, 0.0], [1.5, 3.0]);
        let b = box_di(2.0, &p1, &p2, &p3, &x).unwrap();
        let s = sample_xnext_vec(2.0, [&p1, &p2, &p3], &x, 5000, 1).unwrap();
        assert!(s.iter().all(|pt| b.contains(pt)));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(sample_xprime(-1.0, 0.0, 0.0, 10, 0).is_err());
        assert!(sample_xprime(1.0, 0.0, 0.0, 0, 0).is_err());
    }
}
