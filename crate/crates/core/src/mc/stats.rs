//! Goodness-of-fit and summary statistics used by the verification suite.

use serde::{Deserialize, Serialize};

use crate::dist::{CurveKind, GridCurve};
use crate::error::{Error, Result};

/// Kolmogorov-Smirnov distance between the empirical CDF of `samples` and
/// `cdf`.
pub fn ks_statistic(samples: &[f64], cdf: impl Fn(f64) -> f64) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::arg("samples", "empty sample set"));
    }
    if samples.iter().any(|v| v.is_nan()) {
        return Err(Error::arg("samples", "contains NaN"));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let d = sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            ((i + 1) as f64 / n - f).max(f - i as f64 / n)
        })
        .fold(0.0, f64::max);
    Ok(d.clamp(0.0, 1.0))
}

/// Asymptotic KS critical value `1.95 / sqrt(n)` (level 0.001).
pub fn ks_critical(n: usize) -> f64 {
    1.95 / (n as f64).sqrt()
}

/// Cumulative trapezoid integral of a tabulated PDF, rescaled so the last
/// node is exactly 1.
pub fn trapezoid_cdf(curve: &GridCurve) -> Result<GridCurve> {
    if curve.kind() != CurveKind::Pdf {
        return Err(Error::arg("curve", "trapezoid_cdf needs a PDF"));
    }
    let v = curve.values();
    let h = curve.step();
    let mut acc = Vec::with_capacity(v.len());
    acc.push(0.0);
    let mut total = 0.0;
    for w in v.windows(2) {
        total += 0.5 * h * (w[0] + w[1]);
        acc.push(total);
    }
    if total <= 0.0 {
        return Err(Error::arg("curve", "density has no mass"));
    }
    let last = acc.len() - 1;
    for (i, a) in acc.iter_mut().enumerate() {
        *a = if i == last { 1.0 } else { *a / total };
    }
    GridCurve::new(curve.lo(), curve.hi(), acc, CurveKind::Cdf)
}

/// An estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub se: f64,
}

/// `mean((s - center)^r)` with standard error from the order-`2r` moment.
pub fn empirical_central_moment(samples: &[f64], r: u32, center: f64) -> Result<Estimate> {
    if samples.is_empty() {
        return Err(Error::arg("samples", "empty sample set"));
    }
    let n = samples.len() as f64;
    let (mut s1, mut s2) = (0.0, 0.0);
    for &x in samples {
        let d = (x - center).powi(r as i32);
        s1 += d;
        s2 += d * d;
    }
    let value = s1 / n;
    let spread = (s2 / n - value * value).max(0.0);
    Ok(Estimate {
        value,
        se: (spread / n).sqrt(),
    })
}

/// Fixed-width histogram over `[lo, hi)`; the last bin is closed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub lo: f64,
    pub hi: f64,
    pub counts: Vec<u64>,
    /// Samples that fell inside `[lo, hi]`; equals the sum of `counts`.
    pub total: u64,
    /// Samples outside `[lo, hi]`, not binned.
    pub outside: u64,
}

impl Histogram {
    pub fn new(lo: f64, hi: f64, bins: usize) -> Result<Self> {
        if !(lo < hi) || bins == 0 {
            return Err(Error::arg("histogram", "need lo < hi and at least one bin"));
        }
        Ok(Self {
            lo,
            hi,
            counts: vec![0; bins],
            total: 0,
            outside: 0,
        })
    }

    pub fn from_samples(samples: &[f64], lo: f64, hi: f64, bins: usize) -> Result<Self> {
        let mut h = Self::new(lo, hi, bins)?;
        samples.iter().for_each(|&v| h.add(v));
        Ok(h)
    }

    /// Range taken from the sample extremes.
    pub fn auto(samples: &[f64], bins: usize) -> Result<Self> {
        let lo = samples.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = samples.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Self::from_samples(samples, lo, hi, bins)
    }

    pub fn add(&mut self, v: f64) {
        if !(self.lo..=self.hi).contains(&v) {
            self.outside += 1;
            return;
        }
        let bins = self.counts.len();
        let i = (((v - self.lo) / (self.hi - self.lo)) * bins as f64) as usize;
        self.counts[i.min(bins - 1)] += 1;
        self.total += 1;
    }

    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    pub fn width(&self) -> f64 {
        (self.hi - self.lo) / self.counts.len() as f64
    }

    pub fn edges(&self) -> Vec<f64> {
        let n = self.counts.len();
        (0..=n)
            .map(|i| if i == n { self.hi } else { self.lo + i as f64 * self.width() })
            .collect()
    }

    /// Index of the fullest bin (first one on ties).
    pub fn peak(&self) -> usize {
        let max = self.counts.iter().copied().max().unwrap_or(0);
        self.counts.iter().position(|&c| c == max).unwrap_or(0)
    }

    /// Rises to the peak then falls, allowing each bin to sit below the
    /// running maximum (taken from its own side) by `3 sqrt(max)`.
    pub fn is_unimodal(&self) -> bool {
        let k = self.peak();
        let ok = |counts: &mut dyn Iterator<Item = &u64>| {
            let mut run = 0u64;
            for &c in counts {
                run = run.max(c);
                if (c as f64) < run as f64 - 3.0 * (run as f64).sqrt() {
                    return false;
                }
            }
            true
        };
        ok(&mut self.counts[..=k].iter()) && ok(&mut self.counts[k..].iter().rev())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::tabulate;

    #[test]
    fn ks_of_point_mass() {
        let s = vec![0.5; 100];
        assert!(ks_statistic(&s, |u| u.clamp(0.0, 1.0)).unwrap() >= 0.5);
        assert!(ks_statistic(&[], |u| u).is_err());
    }

    #[test]
    fn ks_of_perfect_grid() {
        let n = 1000;
        let s: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect();
        let d = ks_statistic(&s, |u| u).unwrap();
        assert!((d - 0.5 / n as f64).abs() < 1e-12);
    }

    #[test]
    fn trapezoid_of_uniform_is_linear() {
        let pdf = tabulate(2.0, 6.0, 64, CurveKind::Pdf, |_| 0.25).unwrap();
        let cdf = trapezoid_cdf(&pdf).unwrap();
        cdf.validate_cdf().unwrap();
        for (u, v) in cdf.nodes().zip(cdf.values()) {
            assert!((v - (u - 2.0) / 4.0).abs() < 1e-14);
        }
        assert!(trapezoid_cdf(&cdf).is_err());
    }

    #[test]
    fn moments() {
        let s = [1.0, 2.0, 3.0, 6.0];
        assert_eq!(empirical_central_moment(&s, 0, 9.0).unwrap().value, 1.0);
        let v = empirical_central_moment(&s, 2, 3.0).unwrap().value;
        assert_eq!(v, (4.0 + 1.0 + 0.0 + 9.0) / 4.0);
        assert!(empirical_central_moment(&[], 2, 0.0).is_err());
    }

    #[test]
    fn histogram_bookkeeping() {
        let h = Histogram::from_samples(&[0.0, 0.1, 0.5, 1.0, 2.0], 0.0, 1.0, 4).unwrap();
        assert_eq!(h.counts, vec![2, 0, 1, 1]);
        assert_eq!(h.total, 4);
        assert_eq!(h.outside, 1);
        assert_eq!(h.edges(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
    }

    #[test]
    fn unimodality() {
        let mut h = Histogram::new(0.0, 1.0, 5).unwrap();
        h.counts = vec![100, 400, 900, 400, 100];
        assert!(h.is_unimodal());
        h.counts = vec![900, 100, 900, 100, 900];
        assert!(!h.is_unimodal());
    }
}
