//! Acceptance checks that tie the analytic results to Monte-Carlo evidence.
//!
//! Each check records named metrics with their limits; a check passes when
//! every metric does. Statistical limits are quoted at [`REFERENCE_TRIALS`]
//! and widened by `sqrt(REFERENCE_TRIALS / trials)` for smaller runs.

pub mod oracle;

use std::path::Path;
use std::sync::OnceLock;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dist::{box_di, box_dk, cdf_g, mn_params, pdf_h, GridSpec};
use crate::error::{Error, Result};
use crate::gwo::{run_gwo, GwoConfig};
use crate::mc::{
    ks_statistic, sample_xnext_constant, sample_xnext_vec, sample_xprime, sample_xprime_vec,
    simulate_stagnation, trapezoid_cdf, SimConfig, StagnationRun, TraceRow,
};
use crate::moments::{
    attractor_d0, central_moment_step, moment_trajectory, second_moment_step, stability_bounds,
    variance_sequence, PTriple,
};
use crate::objective::Sphere;
use crate::rng::{domain, CounterRng};

pub const REFERENCE_TRIALS: usize = 100_000;

/// `(a, p, x)` for the single-step density checks.
pub const SINGLE_STEP_SETS: [(f64, f64, f64); 4] =
    [(2.0, 1.0, 3.0), (2.0, 1.0, 0.5), (0.5, 1.0, 3.0), (0.5, 1.0, 0.5)];

/// `(label, [p1, p2, p3], x)` for the convolution density checks, all at `a = 2`.
pub const CONVOLUTION_ROWS: [(&str, [f64; 3], f64); 8] = [
    ("a", [0.43, 1.74, 2.70], 0.83),
    ("b", [-0.18, -0.97, -1.31], -0.22),
    ("c", [0.57, 0.86, -1.56], 0.72),
    ("d", [0.65, 1.13, -2.89], 0.90),
    ("e", [0.09, -1.07, 2.88], 2.08),
    ("f", [0.56, -1.85, -0.34], -3.14),
    ("g", [-0.30, 0.96, 2.24], -2.87),
    ("h", [0.22, 0.55, 0.18], 3.11),
];
pub const CONVOLUTION_A: f64 = 2.0;

/// Leaders of the reference stagnation run; other spreads are rescaled copies.
pub const BASE_LEADERS: [f64; 3] = [-1.0, 1.5, 2.5];
pub const INIT: (f64, f64) = (-4.0, 4.0);
pub const VARIANCE_P0: [f64; 2] = [2.20, 1.41];
pub const TERMINAL_T: [usize; 6] = [20, 30, 50, 100, 200, 500];

pub const CHECK_NAMES: [&str; 10] = [
    "single-step pdf",
    "single-step cdf",
    "convolution density",
    "support boxes",
    "variance dynamics",
    "terminal variance trend",
    "order-1 stability",
    "order-2 stability",
    "moment engine consistency",
    "optimizer sanity",
];

pub fn base_leaders() -> PTriple {
    let [p1, p2, p3] = BASE_LEADERS;
    PTriple { p1, p2, p3 }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyConfig {
    pub seed: u64,
    pub trials: usize,
    #[serde(default)]
    pub grid: GridSpec,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 7,
            trials: REFERENCE_TRIALS,
            grid: GridSpec::default(),
        }
    }
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials < 10 {
            return Err(Error::arg("trials", "need at least 10 trials"));
        }
        if self.grid.cells < 16 || self.grid.max_cells < self.grid.cells {
            return Err(Error::arg("grid", "need cells >= 16 and max_cells >= cells"));
        }
        Ok(())
    }

    pub fn tolerance_scale(&self) -> f64 {
        (REFERENCE_TRIALS as f64 / self.trials as f64).max(1.0).sqrt()
    }

    pub fn low_power(&self) -> bool {
        self.trials < REFERENCE_TRIALS
    }

    fn seed_for(&self, check: u8, k: usize) -> u64 {
        self.seed
            .wrapping_add((check as u64) << 40)
            .wrapping_add((k as u64) << 20)
    }

    fn rng_for(&self, check: u8) -> ChaCha8Rng {
        CounterRng::new(self.seed, domain::CHECKS).stream(check as u64)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metric {
    pub name: String,
    pub value: f64,
    pub limit: f64,
    pub passed: bool,
}

impl Metric {
    /// Passes when `value <= limit`.
    fn at_most(name: impl Into<String>, value: f64, limit: f64) -> Self {
        Self {
            name: name.into(),
            value,
            limit,
            passed: value <= limit,
        }
    }

    /// Passes when `value < limit`.
    fn below(name: impl Into<String>, value: f64, limit: f64) -> Self {
        Self {
            name: name.into(),
            value,
            limit,
            passed: value < limit,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckResult {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub metrics: Vec<Metric>,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl CheckResult {
    fn new(id: u8, metrics: Vec<Metric>, notes: Vec<String>) -> Self {
        Self {
            id,
            name: CHECK_NAMES[id as usize - 1].to_string(),
            passed: metrics.iter().all(|m| m.passed),
            metrics,
            notes,
        }
    }

    /// One line: id, verdict, name and every metric against its limit.
    pub fn summary(&self) -> String {
        let metrics: Vec<String> = self
            .metrics
            .iter()
            .map(|m| format!("{}={:.3e} (limit {:.3e})", m.name, m.value, m.limit))
            .collect();
        format!(
            "[{}] {:>2} {}: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            metrics.join(", ")
        )
    }
}

/// Mean and variance trace of one stagnation run coordinate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceSet {
    pub label: String,
    pub p: PTriple,
    pub rows: Vec<TraceRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunReport {
    pub config: VerifyConfig,
    pub low_power: bool,
    pub tolerance_scale: f64,
    pub checks: Vec<CheckResult>,
    pub traces: Vec<TraceSet>,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, serde_json::to_string_pretty(self)?)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }
}

struct StagnationCase {
    label: String,
    run: StagnationRun,
}

/// Runs checks on demand, sharing the expensive simulations between them.
pub struct Suite {
    cfg: VerifyConfig,
    variance_runs: OnceLock<Vec<StagnationCase>>,
    stability_run: OnceLock<StagnationCase>,
}

fn cached<T>(cell: &OnceLock<T>, init: impl FnOnce() -> Result<T>) -> Result<&T> {
    if let Some(v) = cell.get() {
        return Ok(v);
    }
    let v = init()?;
    Ok(cell.get_or_init(|| v))
}

fn max_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, f64::max)
}

impl Suite {
    pub fn new(cfg: VerifyConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(Self {
            cfg,
            variance_runs: OnceLock::new(),
            stability_run: OnceLock::new(),
        })
    }

    pub fn config(&self) -> &VerifyConfig {
        &self.cfg
    }

    pub fn check(&self, id: u8) -> Result<CheckResult> {
        match id {
            1 => self.single_step_pdf(),
            2 => self.single_step_cdf(),
            3 => self.convolution_density(),
            4 => self.support_boxes(),
            5 => self.variance_dynamics(),
            6 => self.terminal_trend(),
            7 => self.order_one(),
            8 => self.order_two(),
            9 => self.moment_consistency(),
            10 => self.optimizer_sanity(),
            _ => Err(Error::arg("check", format!("no check with id {id}"))),
        }
    }

    pub fn run(&self, ids: &[u8]) -> Result<RunReport> {
        let checks = ids.iter().map(|&id| self.check(id)).collect::<Result<Vec<_>>>()?;
        let mut traces = Vec::new();
        for case in self.variance_runs.get().into_iter().flatten() {
            traces.push(trace_set(&case.label, case, 0));
        }
        if let Some(case) = self.stability_run.get() {
            for j in 0..case.run.config.p.len() {
                traces.push(trace_set(&format!("{}[{j}]", case.label), case, j));
            }
        }
        Ok(RunReport {
            config: self.cfg.clone(),
            low_power: self.cfg.low_power(),
            tolerance_scale: self.cfg.tolerance_scale(),
            checks,
            traces,
        })
    }

    pub fn run_all(&self) -> Result<RunReport> {
        self.run(&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10])
    }

    fn single_step_pdf(&self) -> Result<CheckResult> {
        let n = self.cfg.trials;
        let mut ks = Vec::new();
        for (k, &(a, p, x)) in SINGLE_STEP_SETS.iter().enumerate() {
            let sp = mn_params(a, p, x)?;
            let samples = sample_xprime(a, p, x, n, self.cfg.seed_for(1, k))?;
            ks.push(ks_statistic(&samples, |u| cdf_g(u, &sp).unwrap_or(f64::NAN))?);
        }
        let notes = vec![format!("KS per set: {ks:.5?}")];
        let limit = 0.01 * self.cfg.tolerance_scale();
        Ok(CheckResult::new(1, vec![Metric::below("max KS", max_of(ks), limit)], notes))
    }

    fn single_step_cdf(&self) -> Result<CheckResult> {
        let mut rng = self.cfg.rng_for(2);
        let mut region_err = 0.0f64;
        for case in 0..4 {
            for _ in 0..1000 {
                let a = rng.random_range(0.2..2.0);
                let p = rng.random_range(0.1..3.0);
                let x = if case < 2 {
                    2.0 * p + rng.random_range(0.0..3.0)
                } else {
                    p + p * rng.random_range(0.0..1.0)
                };
                let sp = mn_params(a, p, x)?;
                // case 0/2: inside |u - p| < |m|; case 1/3: between |m| and n
                let y = if case % 2 == 0 {
                    sp.m.abs() * rng.random::<f64>()
                } else {
                    sp.m.abs() + (sp.n - sp.m.abs()) * rng.random::<f64>()
                };
                let u = p + y;
                let err = (cdf_g(u, &sp)? - oracle::region_cdf(a, p, x, u)?).abs();
                region_err = region_err.max(err);
            }
        }
        let mut quad_err = 0.0f64;
        for _ in 0..400 {
            let a = rng.random_range(0.1..2.0);
            let p = rng.random_range(-3.0..3.0);
            let x = rng.random_range(-4.0..4.0);
            let sp = mn_params(a, p, x)?;
            let u = p + sp.n * rng.random_range(-1.1..1.1);
            let err = (cdf_g(u, &sp)? - oracle::quadrature_cdf(a, p, x, u, 1e-10)?).abs();
            quad_err = quad_err.max(err);
        }
        Ok(CheckResult::new(
            2,
            vec![
                Metric::at_most("region formula error", region_err, 1e-10),
                Metric::at_most("quadrature error", quad_err, 1e-8),
            ],
            vec![],
        ))
    }

    fn convolution_density(&self) -> Result<CheckResult> {
        let n = self.cfg.trials;
        let (mut norm, mut sym, mut rises, mut ks) = (0.0f64, 0.0f64, 0usize, Vec::new());
        for (k, &(_, p, x)) in CONVOLUTION_ROWS.iter().enumerate() {
            let h = pdf_h(&self.cfg.grid, CONVOLUTION_A, p, x)?;
            norm = norm.max((h.integral() - 1.0).abs());
            let v = h.values();
            let len = v.len();
            for i in 0..len / 2 {
                sym = sym.max((v[i] - v[len - 1 - i]).abs());
            }
            let slack = 1e-12 * h.max();
            rises += (0..len / 2).filter(|&i| v[i + 1] < v[i] - slack).count();
            let cdf = trapezoid_cdf(&h)?;
            let samples = sample_xnext_constant(CONVOLUTION_A, p, x, n, self.cfg.seed_for(3, k))?;
            ks.push(ks_statistic(&samples, |u| cdf.eval(u))?);
        }
        let notes = vec![format!("KS per row: {ks:.5?}")];
        let limit = 0.015 * self.cfg.tolerance_scale();
        Ok(CheckResult::new(
            3,
            vec![
                Metric::at_most("normalization error", norm, 1e-6),
                Metric::at_most("symmetry error", sym, 1e-6),
                Metric::at_most("decreases left of center", rises as f64, 0.0),
                Metric::below("max KS", max_of(ks), limit),
            ],
            notes,
        ))
    }

    fn support_boxes(&self) -> Result<CheckResult> {
        const COUNT: usize = 5000;
        let (p, x) = ([1.0, 1.0], [1.5, 3.0]);
        let mut width_err = 0.0f64;
        let mut outside = 0usize;
        for (k, (a, expect)) in [(2.0, [6.0, 12.0]), (0.5, [1.5, 3.0])].into_iter().enumerate() {
            let b = box_dk(a, &p, &x)?;
            width_err = width_err.max(max_of(b.widths().iter().zip(expect).map(|(w, e)| (w - e).abs())));
            let samples = sample_xprime_vec(a, &p, &x, COUNT, self.cfg.seed_for(4, k))?;
            outside += samples.iter().filter(|s| !b.contains(s)).count();
        }

        let (p1, p2, p3, x7) = ([0.0, 0.0], [0.0, 1.0], [1.0, 0.0], [1.5, 3.0]);
        let b = box_di(2.0, &p1, &p2, &p3, &x7)?;
        let geometry_err = max_of(
            b.centers()
                .iter()
                .zip([1.0 / 3.0, 1.0 / 3.0])
                .chain(b.half_widths().iter().zip([3.0, 6.0]))
                .map(|(v, e)| (v - e).abs()),
        );
        let samples = sample_xnext_vec(2.0, [&p1, &p2, &p3], &x7, COUNT, self.cfg.seed_for(4, 2))?;
        outside += samples.iter().filter(|s| !b.contains(s)).count();
        let (c, h) = (b.centers(), b.half_widths());
        let central = samples
            .iter()
            .filter(|s| s.iter().enumerate().all(|(j, v)| (v - c[j]).abs() <= 0.5 * h[j]))
            .count() as f64
            / COUNT as f64;
        Ok(CheckResult::new(
            4,
            vec![
                Metric::at_most("box width error", width_err, 0.0),
                Metric::at_most("centered box error", geometry_err, 1e-15),
                Metric::at_most("samples outside", outside as f64, 0.0),
                Metric::at_most("uniform share of central quarter minus observed", 0.25 - central, 0.0),
            ],
            vec![format!("central quarter holds {central:.4} of the samples")],
        ))
    }

    fn variance_runs(&self) -> Result<&[StagnationCase]> {
        cached(&self.variance_runs, || {
            VARIANCE_P0
                .iter()
                .enumerate()
                .map(|(k, &p0)| {
                    let p = base_leaders().scaled_to_p0(p0)?;
                    let mut sim = SimConfig::stagnation(vec![p], 50, self.cfg.trials, self.cfg.seed_for(5, k));
                    sim.retain_cap = 0;
                    Ok(StagnationCase {
                        label: format!("variance p0={p0}"),
                        run: simulate_stagnation(&sim)?,
                    })
                })
                .collect()
        })
        .map(Vec::as_slice)
    }

    fn variance_dynamics(&self) -> Result<CheckResult> {
        let total = 50;
        let mut mc_gap = 0.0f64;
        let mut lagged_gap = 0.0f64;
        let mut same_t_gap = 0.0f64;
        for case in self.variance_runs()? {
            let p = case.run.config.p[0];
            let d = variance_sequence(&p, total, INIT)?;
            for t in 2..=45 {
                mc_gap = mc_gap.max((case.run.stats(0, t).var - d.at(t)).abs() / d.at(t));
            }
            for t in 10..=40 {
                let d0 = attractor_d0(t, total, &p)?;
                lagged_gap = lagged_gap.max((d.at(t + 1) - d0).abs() / d0);
                same_t_gap = same_t_gap.max((d.at(t) - d0).abs() / d0);
            }
        }
        let notes = vec![format!(
            "D_t against the attractor of the same t differs by up to {:.1}%",
            100.0 * same_t_gap
        )];
        Ok(CheckResult::new(
            5,
            vec![
                Metric::at_most("MC relative gap", mc_gap, 0.03 * self.cfg.tolerance_scale()),
                Metric::below("attractor relative gap", lagged_gap, 0.15),
            ],
            notes,
        ))
    }

    fn terminal_trend(&self) -> Result<CheckResult> {
        let p = base_leaders().scaled_to_p0(VARIANCE_P0[0])?;
        let mut values = Vec::new();
        let mut over_bound = 0usize;
        for &total in &TERMINAL_T {
            let d = variance_sequence(&p, total, INIT)?;
            let gap = (d.terminal() - attractor_d0(total, total, &p)?).abs();
            let (_, bound) = stability_bounds(d.at(1), total, &p, total)?;
            over_bound += usize::from(gap >= bound);
            values.push(gap);
        }
        let increases = values.windows(2).filter(|w| w[1] >= w[0]).count();
        Ok(CheckResult::new(
            6,
            vec![
                Metric::at_most("non-decreasing steps", increases as f64, 0.0),
                Metric::at_most("values above bound", over_bound as f64, 0.0),
            ],
            vec![format!(
                "|D_T - D_0| for T in {TERMINAL_T:?}: [{}]",
                values.iter().map(|v| format!("{v:.3e}")).collect::<Vec<_>>().join(", ")
            )],
        ))
    }

    fn stability_run(&self) -> Result<&StagnationCase> {
        cached(&self.stability_run, || {
            let mut rng = self.cfg.rng_for(7);
            let p = (0..4)
                .map(|_| {
                    PTriple::new(
                        rng.random_range(-5.0..5.0),
                        rng.random_range(-5.0..5.0),
                        rng.random_range(-5.0..5.0),
                    )
                })
                .collect::<Result<Vec<_>>>()?;
            let mut sim = SimConfig::stagnation(p, 50, self.cfg.trials, self.cfg.seed_for(7, 0));
            sim.retain_cap = 0;
            Ok(StagnationCase {
                label: "stability".to_string(),
                run: simulate_stagnation(&sim)?,
            })
        })
    }

    fn order_one(&self) -> Result<CheckResult> {
        let case = self.stability_run()?;
        let run = &case.run;
        let total = run.config.total;
        let mut misses = 0usize;
        let mut worst = 0.0f64;
        for (j, &c) in run.center.iter().enumerate() {
            for t in 2..=total {
                let s = run.stats(j, t);
                let dev = (s.mean - c).abs();
                // the last iterate collapses onto the centroid up to rounding
                let floor = 1e-12 * (1.0 + c.abs());
                if dev > floor {
                    worst = worst.max(dev / s.se_mean);
                }
                misses += usize::from(dev >= 4.0 * s.se_mean + floor);
            }
        }
        Ok(CheckResult::new(
            7,
            vec![Metric::at_most("means beyond 4 SE", misses as f64, 0.0)],
            vec![format!("largest deviation {worst:.2} SE")],
        ))
    }

    fn order_two(&self) -> Result<CheckResult> {
        let run = &self.stability_run()?.run;
        let total = run.config.total;
        let start = total - total / 4;
        let mut ratio = 0.0f64;
        let mut rises = 0usize;
        // below the reference trial count only rises beyond 4 SE count
        let noise = if self.cfg.low_power() { 4.0 } else { 0.0 };
        for j in 0..run.center.len() {
            ratio = ratio.max(run.stats(j, total - 1).var / run.stats(j, 1).var);
            rises += (start..total)
                .filter(|&t| {
                    let (now, next) = (run.stats(j, t), run.stats(j, t + 1));
                    next.var >= now.var + noise * now.se_var.hypot(next.se_var)
                })
                .count();
        }
        Ok(CheckResult::new(
            8,
            vec![
                Metric::below("var(T-1) / var(1)", ratio, 0.01),
                Metric::at_most("late variance increases", rises as f64, 0.0),
            ],
            vec![],
        ))
    }

    fn moment_consistency(&self) -> Result<CheckResult> {
        let mut rng = self.cfg.rng_for(9);
        let mut rel = 0.0f64;
        for _ in 0..1000 {
            let a = rng.random_range(0.01..2.0);
            let p = PTriple::new(
                rng.random_range(-5.0..5.0),
                rng.random_range(-5.0..5.0),
                rng.random_range(-5.0..5.0),
            )?;
            let var = rng.random_range(0.0..5.0);
            let c = p.center();
            let centered = central_moment_step(2, a, &p, &[1.0, c, c * c + var])?;
            let closed = a * a / 9.0 * (var + p.p0());
            rel = rel.max((centered - closed).abs() / closed);

            let mean = rng.random_range(-5.0..5.0);
            let second = mean * mean + var;
            let general = central_moment_step(2, a, &p, &[1.0, mean, second])?;
            let closed = second_moment_step(a, &p, mean, second);
            rel = rel.max((general - closed).abs() / closed);
        }

        let p = base_leaders();
        let total = 60;
        let traj = moment_trajectory(4, &p, total, INIT)?;
        let mut sim = SimConfig::stagnation(vec![p], total, self.cfg.trials, self.cfg.seed_for(9, 0));
        sim.retain_cap = 0;
        let run = simulate_stagnation(&sim)?;
        let mut z = Vec::new();
        for t in [5, 10, 20] {
            let s = run.stats(0, t);
            z.push((s.central[4] - traj.central(t, 4)).abs() / s.central_se[4]);
        }
        Ok(CheckResult::new(
            9,
            vec![
                Metric::at_most("r=2 step relative error", rel, 1e-12),
                Metric::at_most("fourth moment deviation in SE", max_of(z.iter().copied()), 3.0),
            ],
            vec![format!("fourth moment deviations (SE) at t = 5, 10, 20: {z:.2?}")],
        ))
    }

    fn optimizer_sanity(&self) -> Result<CheckResult> {
        let sphere = Sphere { dim: 10 };
        let mut cfg = GwoConfig {
            agents: 30,
            iterations: 500,
            seed: self.cfg.seed,
            clamp: false,
            workers: Some(1),
        };
        let first = run_gwo(&sphere, &cfg)?;
        let again = run_gwo(&sphere, &cfg)?;
        cfg.workers = Some(4);
        let wide = run_gwo(&sphere, &cfg)?;
        let increases = first.trace.windows(2).filter(|w| w[1] > w[0]).count();
        let mismatches = usize::from(first != again) + usize::from(first != wide);
        Ok(CheckResult::new(
            10,
            vec![
                Metric::at_most("trace increases", increases as f64, 0.0),
                Metric::below("final / initial fitness", first.best_fitness / first.initial_fitness, 1e-2),
                Metric::at_most("runs differing", mismatches as f64, 0.0),
            ],
            vec![format!(
                "initial {:.3e}, final {:.3e}",
                first.initial_fitness, first.best_fitness
            )],
        ))
    }
}

fn trace_set(label: &str, case: &StagnationCase, j: usize) -> TraceSet {
    TraceSet {
        label: label.to_string(),
        p: case.run.config.p[j],
        rows: case.run.trace(j),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_scaling() {
        let mut cfg = VerifyConfig::default();
        assert_eq!(cfg.tolerance_scale(), 1.0);
        assert!(!cfg.low_power());
        cfg.trials = 1000;
        assert!((cfg.tolerance_scale() - 10.0).abs() < 1e-12);
        assert!(cfg.low_power());
        cfg.trials = 5;
        assert!(Suite::new(cfg).is_err());
    }

    #[test]
    fn deterministic_checks_pass() {
        let suite = Suite::new(VerifyConfig::default()).unwrap();
        for id in [2, 6] {
            let r = suite.check(id).unwrap();
            assert!(r.passed, "{}", r.summary());
        }
        assert!(suite.check(11).is_err());
    }

    #[test]
    fn report_round_trip() {
        let suite = Suite::new(VerifyConfig { trials: 200, ..Default::default() }).unwrap();
        let report = suite.run(&[4, 6]).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run_report.json");
        report.save(&path).unwrap();
        assert_eq!(RunReport::load(&path).unwrap(), report);
    }
}
