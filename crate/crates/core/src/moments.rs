//! Exact moment recursions for one coordinate of an agent under stagnation
//! (frozen leaders `p1, p2, p3`).
//!
//! Central moments are taken about the leader centroid `c = (p1 + p2 + p3)/3`,
//! which is the mean of every iterate after the first. Throughout, `sum_sq`
//! means `p1^2 + p2^2 + p3^2` for the fixed coordinate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gwo::schedule_a;

/// Leader coordinates of one dimension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PTriple {
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
}

impl PTriple {
    pub fn new(p1: f64, p2: f64, p3: f64) -> Result<Self> {
        if !(p1.is_finite() && p2.is_finite() && p3.is_finite()) {
            return Err(Error::arg("p", "leader coordinates must be finite"));
        }
        Ok(Self { p1, p2, p3 })
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.p1, self.p2, self.p3]
    }

    pub fn sum(&self) -> f64 {
        self.p1 + self.p2 + self.p3
    }

    pub fn center(&self) -> f64 {
        self.sum() / 3.0
    }

    pub fn sum_sq(&self) -> f64 {
        self.p1 * self.p1 + self.p2 * self.p2 + self.p3 * self.p3
    }

    /// Leader-spread constant `(4/9) sum_sq - (1/9) sum^2`; never negative.
    pub fn p0(&self) -> f64 {
        (4.0 * self.sum_sq() - self.sum() * self.sum()) / 9.0
    }

    /// The same triple scaled about the origin so that `p0` equals `target`.
    pub fn scaled_to_p0(&self, target: f64) -> Result<Self> {
        let p0 = self.p0();
        if !(target >= 0.0) || p0 == 0.0 {
            return Err(Error::arg("p0", "need target >= 0 and leaders not all zero"));
        }
        let k = (target / p0).sqrt();
        Self::new(k * self.p1, k * self.p2, k * self.p3)
    }
}

/// Pascal's triangle up to row `n`.
fn pascal(n: usize) -> Vec<Vec<f64>> {
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = vec![1.0; i + 1];
        for k in 1..i {
            row[k] = rows[i - 1][k - 1] + rows[i - 1][k];
        }
        rows.push(row);
    }
    rows
}

pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64).round()
}

/// `E (U - c)^r` for `U ~ U[lo, hi]`.
pub fn uniform_offset_moment(r: usize, lo: f64, hi: f64, c: f64) -> Result<f64> {
    if !(lo < hi) {
        return Err(Error::arg("init", format!("need lo < hi, got [{lo}, {hi}]")));
    }
    if r == 0 {
        return Ok(1.0);
    }
    let e = r as i32 + 1;
    Ok(((hi - c).powi(e) - (lo - c).powi(e)) / ((hi - lo) * e as f64))
}

/// `E A^r` for `A ~ U[-a, a]`.
pub fn driver_moment_a(r: usize, a: f64) -> f64 {
    if r % 2 == 1 {
        0.0
    } else {
        a.powi(r as i32) / (r + 1) as f64
    }
}

/// `E C^r` for `C ~ U[0, 2]`.
pub fn driver_moment_c(r: usize) -> f64 {
    2f64.powi(r as i32) / (r + 1) as f64
}

/// One step of the central-moment recursion: `E (x(t+1) - c)^r` from the raw
/// moments `raw[m] = E x(t)^m`, `m = 0..=r`.
///
/// Expands `(1/3^r) E (sum_k A_k (C_k p_k - x))^r` over even exponents
/// `(2i, 2j, 2s)` of the three drivers, then expands each
/// `(C_k p_k - x)^{2e}` binomially and integrates `C_k` out. Odd orders are 0.
pub fn central_moment_step(r: usize, a: f64, p: &PTriple, raw: &[f64]) -> Result<f64> {
    if raw.len() <= r {
        return Err(Error::arg(
            "raw",
            format!("need raw moments of orders 0..={r}, got {}", raw.len()),
        ));
    }
    if r % 2 == 1 {
        return Ok(0.0);
    }
    let binom = pascal(r);
    let [p1, p2, p3] = p.as_array();
    let half = r / 2;
    let mut total = 0.0;
    for i in 0..=half {
        for j in 0..=half - i {
            let s = half - i - j;
            let (e1, e2, e3) = (2 * i, 2 * j, 2 * s);
            let outer = binom[r][e1] * binom[r - e1][e2]
                / ((e1 + 1) * (e2 + 1) * (e3 + 1)) as f64;
            let mut inner = 0.0;
            for l1 in 0..=e1 {
                for l2 in 0..=e2 {
                    for l3 in 0..=e3 {
                        let l = l1 + l2 + l3;
                        let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
                        let coef = 2f64.powi((r - l) as i32) * binom[e1][l1] * binom[e2][l2] * binom[e3][l3]
                            / ((e1 - l1 + 1) * (e2 - l2 + 1) * (e3 - l3 + 1)) as f64;
                        inner += sign
                            * coef
                            * p1.powi((e1 - l1) as i32)
                            * p2.powi((e2 - l2) as i32)
                            * p3.powi((e3 - l3) as i32)
                            * raw[l];
                    }
                }
            }
            total += outer * inner;
        }
    }
    Ok(total * (a / 3.0).powi(r as i32))
}

/// `E x^r = sum_m C(r, m) c^(r-m) sigma^m` with `central[m] = E (x - c)^m`.
pub fn raw_from_central(r: usize, c: f64, central: &[f64]) -> Result<f64> {
    if central.len() <= r {
        return Err(Error::arg(
            "central",
            format!("need central moments of orders 0..={r}, got {}", central.len()),
        ));
    }
    Ok((0..=r)
        .map(|m| binomial(r, m) * c.powi((r - m) as i32) * central[m])
        .sum())
}

/// Central (about the leader centroid) and raw moments for `t = 1..=T`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentTrajectory {
    pub order: usize,
    pub total: usize,
    pub center: f64,
    /// `central[t - 1][r] = E (x(t) - center)^r`
    pub central: Vec<Vec<f64>>,
    /// `raw[t - 1][m] = E x(t)^m`
    pub raw: Vec<Vec<f64>>,
}

impl MomentTrajectory {
    pub fn central(&self, t: usize, r: usize) -> f64 {
        self.central[t - 1][r]
    }

    pub fn raw(&self, t: usize, m: usize) -> f64 {
        self.raw[t - 1][m]
    }

    pub fn mean(&self, t: usize) -> f64 {
        self.raw(t, 1)
    }

    /// Variance about the true mean (differs from `central(t, 2)` only at t = 1).
    pub fn variance(&self, t: usize) -> f64 {
        let mu = self.central(t, 1);
        self.central(t, 2) - mu * mu
    }
}

/// Runs the recursion from `x(1) ~ U[lo, hi]` up to order `order` (even).
///
/// At every step all even orders come from [`central_moment_step`], odd
/// orders are set to exactly zero, and raw moments are refreshed with
/// [`raw_from_central`].
pub fn moment_trajectory(order: usize, p: &PTriple, total: usize, init: (f64, f64)) -> Result<MomentTrajectory> {
    if order < 2 || order % 2 == 1 {
        return Err(Error::arg("order", format!("must be even and >= 2, got {order}")));
    }
    if total < 2 {
        return Err(Error::arg("T", "need at least two iterations"));
    }
    let c = p.center();
    let first: Vec<f64> = (0..=order)
        .map(|r| uniform_offset_moment(r, init.0, init.1, c))
        .collect::<Result<_>>()?;
    let mut central = vec![first];
    let mut raw = Vec::with_capacity(total);
    for t in 1..=total {
        let sigma = &central[t - 1];
        let r_t: Vec<f64> = (0..=order)
            .map(|m| raw_from_central(m, c, sigma))
            .collect::<Result<_>>()?;
        if t < total {
            let a = schedule_a(t, total)?;
            let next = (0..=order)
                .map(|r| {
                    if r % 2 == 1 {
                        Ok(0.0)
                    } else {
                        central_moment_step(r, a, p, &r_t)
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            central.push(next);
        }
        raw.push(r_t);
    }
    Ok(MomentTrajectory {
        order,
        total,
        center: c,
        central,
        raw,
    })
}

/// `b_t = a(t)^2 / 9`.
pub fn b_coefficient(t: usize, total: usize) -> Result<f64> {
    let a = schedule_a(t, total)?;
    Ok(a * a / 9.0)
}

/// `D_{t+1} = b_t (D_t + p0)`, valid once the mean has reached the centroid
/// (every `t >= 2`).
pub fn variance_step(d: f64, t: usize, total: usize, p: &PTriple) -> Result<f64> {
    Ok(b_coefficient(t, total)? * (d + p.p0()))
}

/// First variance step from `x(1)` with arbitrary mean:
/// `D_2 = b_1 ((4/9) sum_sq - (2/3) sum E x + E x^2)`.
/// Second moment about the centroid after one step from an iterate with
/// raw moments `mean`, `second`; no assumption on the mean.
pub fn second_moment_step(a: f64, p: &PTriple, mean: f64, second: f64) -> f64 {
    a * a / 9.0 * (4.0 * p.sum_sq() / 9.0 - 2.0 * p.sum() * mean / 3.0 + second)
}

pub fn first_variance_step(mean1: f64, var1: f64, total: usize, p: &PTriple) -> Result<f64> {
    Ok(second_moment_step(schedule_a(1, total)?, p, mean1, var1 + mean1 * mean1))
}

/// Fixed point `b_t p0 / (1 - b_t)` of the variance map used at iteration `t`.
pub fn attractor_d0(t: usize, total: usize, p: &PTriple) -> Result<f64> {
    let b = b_coefficient(t, total)?;
    Ok(b * p.p0() / (1.0 - b))
}

/// Returns the envelope `(4/9)^(t-1) |D1 - b_1 p0 / (1 - b_1)|` and the
/// terminal bound `(4 / (9 T^2)) (D1 + p0 (T - 1))`.
pub fn stability_bounds(d1: f64, t: usize, p: &PTriple, total: usize) -> Result<(f64, f64)> {
    if t == 0 || t > total {
        return Err(Error::arg("t", format!("{t} outside 1..={total}")));
    }
    let d0_first = attractor_d0(1, total, p)?;
    let envelope = (4.0f64 / 9.0).powi(t as i32 - 1) * (d1 - d0_first).abs();
    let tt = total as f64;
    let terminal = 4.0 / (9.0 * tt * tt) * (d1 + p.p0() * (tt - 1.0));
    Ok((envelope, terminal))
}

/// Variance sequence `D_1..=D_T` with `b_t`, from `x(1) ~ U[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VarianceDynamics {
    pub p0: f64,
    /// `b[t - 1] = b_t`
    pub b: Vec<f64>,
    /// `d[t - 1] = D_t`
    pub d: Vec<f64>,
}

impl VarianceDynamics {
    pub fn at(&self, t: usize) -> f64 {
        self.d[t - 1]
    }

    pub fn terminal(&self) -> f64 {
        self.d[self.d.len() - 1]
    }
}

pub fn variance_sequence(p: &PTriple, total: usize, init: (f64, f64)) -> Result<VarianceDynamics> {
    if total < 2 {
        return Err(Error::arg("T", "need at least two iterations"));
    }
    let mean1 = 0.5 * (init.0 + init.1);
    let var1 = uniform_offset_moment(2, init.0, init.1, mean1)?;
    let mut d = vec![var1, first_variance_step(mean1, var1, total, p)?];
    for t in 2..total {
        let next = variance_step(d[t - 1], t, total, p)?;
        d.push(next);
    }
    let b = (1..=total)
        .map(|t| b_coefficient(t, total))
        .collect::<Result<_>>()?;
    Ok(VarianceDynamics { p0: p.p0(), b, d })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * a.abs().max(b.abs()).max(1e-300)
    }

    #[test]
    fn uniform_moments() {
        assert_eq!(uniform_offset_moment(1, -3.0, 5.0, 1.0).unwrap(), 0.0);
        assert!((uniform_offset_moment(2, -4.0, 4.0, 0.0).unwrap() - 16.0 / 3.0).abs() < 1e-14);
        assert_eq!(uniform_offset_moment(0, -4.0, 4.0, 7.0).unwrap(), 1.0);
        assert!(uniform_offset_moment(2, 1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn drivers() {
        assert!((driver_moment_a(2, 2.0) - 4.0 / 3.0).abs() < 1e-15);
        assert_eq!(driver_moment_a(3, 2.0), 0.0);
        assert_eq!(driver_moment_c(1), 1.0);
        assert!((driver_moment_c(2) - 4.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(8, 3), 56.0);
        assert_eq!(binomial(3, 5), 0.0);
        assert_eq!(pascal(6)[6][2], 15.0);
    }

    #[test]
    fn zero_leaders_scale_second_moment() {
        let p = PTriple::new(0.0, 0.0, 0.0).unwrap();
        let raw = [1.0, 0.7, 2.3];
        let got = central_moment_step(2, 1.7, &p, &raw).unwrap();
        assert!(close(got, 1.7 * 1.7 / 9.0 * 2.3, 1e-14));
    }

    #[test]
    fn second_order_step_matches_variance_form() {
        // raw moments with mean != centroid exercise the sign of the cross term
        let p = PTriple::new(-1.0, 1.5, 2.5).unwrap();
        let (mean, var) = (0.4, 2.0);
        let raw = [1.0, mean, var + mean * mean];
        let a = 1.2;
        let generic = central_moment_step(2, a, &p, &raw).unwrap();
        let closed = a * a / 9.0 * (4.0 * p.sum_sq() / 9.0 - 2.0 * p.sum() * mean / 3.0 + raw[2]);
        assert!(close(generic, closed, 1e-12));
    }

    #[test]
    fn odd_orders_vanish() {
        let p = PTriple::new(0.2, 0.3, -0.9).unwrap();
        assert_eq!(central_moment_step(3, 1.0, &p, &[1.0, 2.0, 3.0, 4.0]).unwrap(), 0.0);
        assert!(central_moment_step(4, 1.0, &p, &[1.0, 2.0]).is_err());
    }

    #[test]
    fn raw_central_conversion() {
        let central = [1.0, 0.0, 1.0 / 3.0];
        assert_eq!(raw_from_central(2, 0.0, &central).unwrap(), 1.0 / 3.0);
        assert_eq!(raw_from_central(1, 2.5, &central).unwrap(), 2.5);
        assert!((raw_from_central(2, 1.0, &central).unwrap() - 4.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn variance_steps() {
        let zero = PTriple::new(0.0, 0.0, 0.0).unwrap();
        assert_eq!(variance_step(3.0, 5, 10, &zero).unwrap(), b_coefficient(5, 10).unwrap() * 3.0);
        let ones = PTriple::new(1.0, 1.0, 1.0).unwrap();
        assert!((ones.p0() - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(variance_step(7.0, 10, 10, &ones).unwrap(), 0.0);
        // a(t) = 2 at the (virtual) start of the schedule: b = 4/9
        assert!((4.0 / 9.0 * (0.0 + ones.p0()) - 4.0 / 27.0).abs() < 1e-15);
    }

    #[test]
    fn attractor_values() {
        let ones = PTriple::new(1.0, 1.0, 1.0).unwrap();
        let b = 4.0 / 9.0;
        assert!((b * ones.p0() / (1.0 - b) - 4.0 / 15.0).abs() < 1e-15);
        assert_eq!(attractor_d0(20, 20, &ones).unwrap(), 0.0);
        let flat = PTriple::new(0.0, 0.0, 0.0).unwrap();
        assert_eq!(attractor_d0(3, 20, &flat).unwrap(), 0.0);
    }

    #[test]
    fn bounds_at_first_iteration() {
        let p = PTriple::new(0.3, -1.0, 2.0).unwrap();
        let (env, _) = stability_bounds(5.0, 1, &p, 40).unwrap();
        let b1 = b_coefficient(1, 40).unwrap();
        assert_eq!(env, (5.0 - b1 * p.p0() / (1.0 - b1)).abs());
        let (_, small) = stability_bounds(5.0, 1, &p, 1_000_000).unwrap();
        let (_, large) = stability_bounds(5.0, 1, &p, 1000).unwrap();
        assert!(small < large / 100.0);
    }

    #[test]
    fn trajectory_odd_moments_and_mean() {
        let p = PTriple::new(-1.0, 1.5, 2.5).unwrap();
        let tr = moment_trajectory(6, &p, 30, (-4.0, 4.0)).unwrap();
        for t in 2..=30 {
            assert_eq!(tr.central(t, 1), 0.0);
            assert_eq!(tr.central(t, 3), 0.0);
            assert_eq!(tr.central(t, 5), 0.0);
            assert_eq!(tr.mean(t), p.center());
            assert!(tr.central(t, 2) >= 0.0);
        }
        assert!(moment_trajectory(3, &p, 30, (-4.0, 4.0)).is_err());
        assert!(moment_trajectory(2, &p, 1, (-4.0, 4.0)).is_err());
    }

    #[test]
    fn trajectory_matches_variance_sequence() {
        let p = PTriple::new(-1.0, 1.5, 2.5).unwrap();
        let tr = moment_trajectory(2, &p, 60, (-4.0, 4.0)).unwrap();
        let vs = variance_sequence(&p, 60, (-4.0, 4.0)).unwrap();
        for t in 1..=60 {
            assert!(close(tr.variance(t), vs.at(t), 1e-12), "t={t}");
        }
    }
}
