//! Monte-Carlo simulation of agents under frozen leaders.
//!
//! Trial `i` reads stream `i` of `(seed, STAGNATION)`: its initial position
//! first, then slot `(t, j)` for the update that produces `x_j(t + 1)`.
//! Trials are grouped in fixed batches whose partial sums are combined in
//! batch order, so the output is identical for any number of workers.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gwo::{schedule_a, update_coordinate};
use crate::moments::PTriple;
use crate::rng::{domain, CounterRng, WORDS_PER_SLOT};

const TRIAL_BATCH: usize = 256;
/// Highest power kept in the streaming sums (enough for SE of 4th moments).
const SUM_ORDER: usize = 8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SimMode {
    /// `x(t + 1)` is drawn from the update of `x(t)`.
    Stagnation,
    /// Every update starts from the same fixed position `x`.
    ConstantX { x: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    /// Leader coordinates, one triple per dimension.
    pub p: Vec<PTriple>,
    /// Total iterations `T`; iterates `x(1)..=x(T)` are recorded.
    pub total: usize,
    pub trials: usize,
    pub init_lo: f64,
    pub init_hi: f64,
    pub seed: u64,
    pub mode: SimMode,
    /// Keep every sample only while `trials * T * dims` stays below this.
    #[serde(default = "default_retain_cap")]
    pub retain_cap: usize,
}

fn default_retain_cap() -> usize {
    10_000_000
}

impl SimConfig {
    pub fn stagnation(p: Vec<PTriple>, total: usize, trials: usize, seed: u64) -> Self {
        Self {
            p,
            total,
            trials,
            init_lo: -4.0,
            init_hi: 4.0,
            seed,
            mode: SimMode::Stagnation,
            retain_cap: default_retain_cap(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.p.is_empty() {
            return Err(Error::arg("p", "need at least one dimension"));
        }
        if self.trials == 0 {
            return Err(Error::arg("trials", "must be at least 1"));
        }
        if self.total < 2 {
            return Err(Error::arg("T", "need at least two iterations"));
        }
        if !(self.init_lo < self.init_hi) {
            return Err(Error::arg("init", "need init_lo < init_hi"));
        }
        if let SimMode::ConstantX { x } = &self.mode {
            if x.len() != self.p.len() {
                return Err(Error::arg("x", "dimension differs from p"));
            }
        }
        Ok(())
    }

    fn retains(&self) -> bool {
        self.trials
            .saturating_mul(self.total)
            .saturating_mul(self.p.len())
            <= self.retain_cap
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct PowerSums {
    n: u64,
    s: [f64; SUM_ORDER],
}

impl PowerSums {
    const ZERO: Self = Self { n: 0, s: [0.0; SUM_ORDER] };

    fn add(&mut self, d: f64) {
        self.n += 1;
        let mut pw = 1.0;
        for s in self.s.iter_mut() {
            pw *= d;
            *s += pw;
        }
    }

    fn merge(&mut self, other: &Self) {
        self.n += other.n;
        for (a, b) in self.s.iter_mut().zip(other.s) {
            *a += b;
        }
    }
}

/// Per-iteration summary of one coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeStats {
    pub t: usize,
    pub n: u64,
    pub mean: f64,
    /// Population-convention variance about the sample mean.
    pub var: f64,
    pub se_mean: f64,
    pub se_var: f64,
    /// `central[r]`: mean of `(x - center)^r`, `r = 0..=4`.
    pub central: [f64; 5],
    pub central_se: [f64; 5],
}

impl TimeStats {
    fn from_sums(t: usize, center: f64, sums: &PowerSums) -> Self {
        let n = sums.n as f64;
        let mut m = [0.0; SUM_ORDER + 1];
        m[0] = 1.0;
        for k in 1..=SUM_ORDER {
            m[k] = sums.s[k - 1] / n;
        }
        let mu = m[1];
        let var = (m[2] - mu * mu).max(0.0);
        let mu4 = m[4] - 4.0 * mu * m[3] + 6.0 * mu * mu * m[2] - 3.0 * mu.powi(4);
        let mut central = [0.0; 5];
        let mut central_se = [0.0; 5];
        for r in 0..=4 {
            central[r] = m[r];
            central_se[r] = ((m[2 * r] - m[r] * m[r]).max(0.0) / n).sqrt();
        }
        Self {
            t,
            n: sums.n,
            mean: center + mu,
            var,
            se_mean: (var / n).sqrt(),
            se_var: ((mu4 - var * var).max(0.0) / n).sqrt(),
            central,
            central_se,
        }
    }
}

/// One row of a mean/variance trace export.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub t: usize,
    pub mean: f64,
    pub var: f64,
    pub se_mean: f64,
    pub se_var: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StagnationRun {
    pub config: SimConfig,
    /// Leader centroid per dimension.
    pub center: Vec<f64>,
    /// `stats[j][t - 1]`
    pub stats: Vec<Vec<TimeStats>>,
    /// `samples[j][t - 1][trial]`, present when under the retention cap.
    pub samples: Option<Vec<Vec<Vec<f64>>>>,
}

impl StagnationRun {
    pub fn stats(&self, j: usize, t: usize) -> &TimeStats {
        &self.stats[j][t - 1]
    }

    pub fn samples(&self, j: usize, t: usize) -> Option<&[f64]> {
        self.samples.as_ref().map(|s| s[j][t - 1].as_slice())
    }

    pub fn trace(&self, j: usize) -> Vec<TraceRow> {
        self.stats[j]
            .iter()
            .map(|s| TraceRow {
                t: s.t,
                mean: s.mean,
                var: s.var,
                se_mean: s.se_mean,
                se_var: s.se_var,
            })
            .collect()
    }
}

struct Batch {
    sums: Vec<Vec<PowerSums>>,
    samples: Option<Vec<Vec<Vec<f64>>>>,
}

fn run_batch(cfg: &SimConfig, gen: &CounterRng, center: &[f64], trials: std::ops::Range<usize>, keep: bool) -> Result<Batch> {
    let dims = cfg.p.len();
    let total = cfg.total;
    let mut sums = vec![vec![PowerSums::ZERO; total]; dims];
    let mut samples = keep.then(|| vec![vec![Vec::with_capacity(trials.len()); total]; dims]);
    let a: Vec<f64> = (1..total).map(|t| schedule_a(t, total)).collect::<Result<_>>()?;
    let leaders: Vec<[f64; 3]> = cfg.p.iter().map(PTriple::as_array).collect();
    let mut x = vec![0.0; dims];

    for trial in trials {
        let mut rng = gen.stream(trial as u64);
        for v in x.iter_mut() {
            *v = cfg.init_lo + (cfg.init_hi - cfg.init_lo) * rng.random::<f64>();
        }
        rng.set_word_pos(dims as u128 * WORDS_PER_SLOT);
        for t in 1..=total {
            if t > 1 {
                let at = a[t - 2];
                for j in 0..dims {
                    let from = match &cfg.mode {
                        SimMode::Stagnation => x[j],
                        SimMode::ConstantX { x: fixed } => fixed[j],
                    };
                    x[j] = update_coordinate(from, leaders[j], at, &mut rng);
                }
            }
            for j in 0..dims {
                sums[j][t - 1].add(x[j] - center[j]);
                if let Some(s) = samples.as_mut() {
                    s[j][t - 1].push(x[j]);
                }
            }
        }
    }
    Ok(Batch { sums, samples })
}

pub fn simulate_stagnation(cfg: &SimConfig) -> Result<StagnationRun> {
    cfg.validate()?;
    let gen = CounterRng::new(cfg.seed, domain::STAGNATION);
    let center: Vec<f64> = cfg.p.iter().map(PTriple::center).collect();
    let keep = cfg.retains();
    let batches = cfg.trials.div_ceil(TRIAL_BATCH);
    let parts = (0..batches)
        .into_par_iter()
        .map(|b| {
            let start = b * TRIAL_BATCH;
            let end = (start + TRIAL_BATCH).min(cfg.trials);
            run_batch(cfg, &gen, &center, start..end, keep)
        })
        .collect::<Result<Vec<_>>>()?;

    let dims = cfg.p.len();
    let mut sums = vec![vec![PowerSums::ZERO; cfg.total]; dims];
    let mut samples = keep.then(|| vec![vec![Vec::with_capacity(cfg.trials); cfg.total]; dims]);
    for part in parts {
        for j in 0..dims {
            for t in 0..cfg.total {
                sums[j][t].merge(&part.sums[j][t]);
            }
        }
        if let (Some(all), Some(mut chunk)) = (samples.as_mut(), part.samples) {
            for j in 0..dims {
                for t in 0..cfg.total {
                    all[j][t].append(&mut chunk[j][t]);
                }
            }
        }
    }
    let stats = sums
        .iter()
        .zip(&center)
        .map(|(row, &c)| {
            row.iter()
                .enumerate()
                .map(|(t, s)| TimeStats::from_sums(t + 1, c, s))
                .collect()
        })
        .collect();
    Ok(StagnationRun {
        config: cfg.clone(),
        center,
        stats,
        samples,
    })
}

/// Runs [`simulate_stagnation`] on a dedicated pool of `workers` threads.
pub fn simulate_stagnation_with(cfg: &SimConfig, workers: Option<usize>) -> Result<StagnationRun> {
    match workers {
        None => simulate_stagnation(cfg),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::arg("workers", e.to_string()))?
            .install(|| simulate_stagnation(cfg)),
    }
}
