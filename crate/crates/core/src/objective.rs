//! Benchmark objectives registered by name.

use crate::error::{Error, Result};

/// A box-bounded minimisation problem.
pub trait Objective: Sync {
    fn name(&self) -> &str;
    fn dimension(&self) -> usize;
    /// Closed interval `(lo, hi)` per coordinate.
    fn bounds(&self) -> Vec<(f64, f64)>;
    fn evaluate(&self, x: &[f64]) -> f64;
}

#[derive(Debug, Clone, Copy)]
pub struct Sphere {
    pub dim: usize,
}

impl Objective for Sphere {
    fn name(&self) -> &str {
        "sphere"
    }
    fn dimension(&self) -> usize {
        self.dim
    }
    fn bounds(&self) -> Vec<(f64, f64)> {
        vec![(-100.0, 100.0); self.dim]
    }
    fn evaluate(&self, x: &[f64]) -> f64 {
        x.iter().map(|v| v * v).sum()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Rastrigin {
    pub dim: usize,
}

impl Objective for Rastrigin {
    fn name(&self) -> &str {
        "rastrigin"
    }
    fn dimension(&self) -> usize {
        self.dim
    }
    fn bounds(&self) -> Vec<(f64, f64)> {
        vec![(-5.12, 5.12); self.dim]
    }
    fn evaluate(&self, x: &[f64]) -> f64 {
        x.iter()
            .map(|v| v * v - 10.0 * (2.0 * std::f64::consts::PI * v).cos() + 10.0)
            .sum()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Rosenbrock {
    pub dim: usize,
}

impl Objective for Rosenbrock {
    fn name(&self) -> &str {
        "rosenbrock"
    }
    fn dimension(&self) -> usize {
        self.dim
    }
    fn bounds(&self) -> Vec<(f64, f64)> {
        vec![(-30.0, 30.0); self.dim]
    }
    fn evaluate(&self, x: &[f64]) -> f64 {
        x.windows(2)
            .map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (w[0] - 1.0).powi(2))
            .sum()
    }
}

pub const SUITE: [&str; 3] = ["sphere", "rastrigin", "rosenbrock"];

/// Look up a benchmark by name.
pub fn by_name(name: &str, dim: usize) -> Result<Box<dyn Objective>> {
    if dim == 0 {
        return Err(Error::arg("dimension", "must be at least 1"));
    }
    match name {
        "sphere" => Ok(Box::new(Sphere { dim })),
        "rastrigin" => Ok(Box::new(Rastrigin { dim })),
        "rosenbrock" => Ok(Box::new(Rosenbrock { dim })),
        other => Err(Error::arg(
            "objective",
            format!("unknown objective `{other}`, expected one of {SUITE:?}"),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_minima() {
        assert_eq!(Sphere { dim: 4 }.evaluate(&[0.0; 4]), 0.0);
        assert!(Rastrigin { dim: 3 }.evaluate(&[0.0; 3]).abs() < 1e-12);
        assert_eq!(Rosenbrock { dim: 5 }.evaluate(&[1.0; 5]), 0.0);
    }

    #[test]
    fn lookup() {
        assert_eq!(by_name("rastrigin", 2).unwrap().bounds()[1], (-5.12, 5.12));
        assert!(by_name("ackley", 2).is_err());
        assert!(by_name("sphere", 0).is_err());
    }
}
