//! Experiment configuration and the four commands behind the `gwo-lab`
//! binary: `dist`, `moments`, `verify` and `optimize`.
//!
//! All outputs of a command go flat into its output directory:
//!
//! | command    | files |
//! |------------|-------|
//! | `dist`     | `{name}_g_pdf`, `{name}_g_cdf` (one leader) or `{name}_g{k}_pdf`, `{name}_g{k}_cdf`, `{name}_h_pdf`, `{name}_h_cdf` (three leaders), each as `.csv` + `.json`; `{name}_hist.csv` |
//! | `moments`  | `{name}_trajectory.csv`, `{name}_table2.csv`, `{name}_mc_trace.csv` when `trials > 0` |
//! | `verify`   | `run_report.json`, `trace_{k}.csv` per recorded trace |
//! | `optimize` | `{name}_trace.csv`, `{name}_solution.json` |

pub mod cli;
pub mod io;

use std::collections::BTreeMap;
use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::dist::{
    mn_params, pdf_h, support_g, tabulate_cdf_g, tabulate_pdf_g, GridSpec,
};
use crate::error::{Error, Result};
use crate::gwo::{run_gwo, GwoConfig, Position};
use crate::mc::{
    sample_xnext_constant, sample_xprime, simulate_stagnation, trapezoid_cdf, Histogram, SimConfig,
};
use crate::moments::{
    attractor_d0, moment_trajectory, stability_bounds, variance_sequence, PTriple,
};
use crate::objective;
use crate::verify::{self, RunReport, Suite, VerifyConfig, CONVOLUTION_ROWS, SINGLE_STEP_SETS, TERMINAL_T};

use io::Table;

fn default_out() -> PathBuf {
    PathBuf::from("out")
}

/// Position update density and Monte-Carlo histogram for fixed `x` and one
/// or three leaders.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistConfig {
    pub name: String,
    pub a: f64,
    /// One leader for the guided step alone, three for the full update.
    pub p: Vec<f64>,
    pub x: f64,
    #[serde(default = "DistConfig::default_samples")]
    pub samples: usize,
    #[serde(default = "DistConfig::default_bins")]
    pub bins: usize,
    /// Nodes of each single-step curve, minus one.
    #[serde(default = "DistConfig::default_curve_cells")]
    pub curve_cells: usize,
    #[serde(default)]
    pub grid: GridSpec,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_out")]
    pub out: PathBuf,
}

impl DistConfig {
    fn default_samples() -> usize {
        100_000
    }
    fn default_bins() -> usize {
        60
    }
    fn default_curve_cells() -> usize {
        2000
    }

    fn new(name: &str, a: f64, p: Vec<f64>, x: f64) -> Self {
        Self {
            name: name.to_string(),
            a,
            p,
            x,
            samples: Self::default_samples(),
            bins: Self::default_bins(),
            curve_cells: Self::default_curve_cells(),
            grid: GridSpec::default(),
            seed: 0,
            out: default_out(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.a.is_finite() || self.a <= 0.0 {
            return Err(Error::Config(format!("field `a` must be positive, got {}", self.a)));
        }
        if self.p.len() != 1 && self.p.len() != 3 {
            return Err(Error::Config(format!("field `p` needs 1 or 3 leaders, got {}", self.p.len())));
        }
        if !self.x.is_finite() || self.p.iter().any(|v| !v.is_finite()) {
            return Err(Error::Config("fields `p` and `x` must be finite".to_string()));
        }
        if self.samples == 0 || self.bins == 0 || self.curve_cells < 2 {
            return Err(Error::Config("`samples`, `bins` and `curve_cells` must be positive".to_string()));
        }
        Ok(())
    }
}

/// Moment trajectory, terminal-variance table and optional stagnation run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MomentsConfig {
    pub name: String,
    pub p: PTriple,
    /// Iterations of the trajectory.
    pub total: usize,
    /// Highest even central moment tracked.
    #[serde(default = "MomentsConfig::default_order")]
    pub order: usize,
    #[serde(default = "MomentsConfig::default_init")]
    pub init: (f64, f64),
    /// Iteration budgets of the terminal-variance table.
    #[serde(default = "MomentsConfig::default_t_list")]
    pub t_list: Vec<usize>,
    /// Stagnation trials for the Monte-Carlo trace; 0 skips it.
    #[serde(default)]
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_out")]
    pub out: PathBuf,
}

impl MomentsConfig {
    fn default_order() -> usize {
        2
    }
    fn default_init() -> (f64, f64) {
        verify::INIT
    }
    fn default_t_list() -> Vec<usize> {
        TERMINAL_T.to_vec()
    }

    fn new(name: &str, p: PTriple, total: usize) -> Self {
        Self {
            name: name.to_string(),
            p,
            total,
            order: Self::default_order(),
            init: Self::default_init(),
            t_list: Self::default_t_list(),
            trials: 0,
            seed: 0,
            out: default_out(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.total < 2 {
            return Err(Error::Config("field `total` must be at least 2".to_string()));
        }
        if self.order < 2 || self.order % 2 == 1 {
            return Err(Error::Config(format!("field `order` must be even and >= 2, got {}", self.order)));
        }
        if !(self.init.0 < self.init.1) {
            return Err(Error::Config("field `init` needs lo < hi".to_string()));
        }
        if self.t_list.iter().any(|&t| t < 2) {
            return Err(Error::Config("every entry of `t_list` must be at least 2".to_string()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyJob {
    #[serde(default = "VerifyJob::default_seed")]
    pub seed: u64,
    #[serde(default = "VerifyJob::default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub grid: GridSpec,
    /// Subset of check ids; all ten when absent.
    #[serde(default)]
    pub checks: Option<Vec<u8>>,
    #[serde(default = "default_out")]
    pub out: PathBuf,
}

impl VerifyJob {
    fn default_seed() -> u64 {
        VerifyConfig::default().seed
    }
    fn default_trials() -> usize {
        verify::REFERENCE_TRIALS
    }

    fn suite_config(&self) -> VerifyConfig {
        VerifyConfig {
            seed: self.seed,
            trials: self.trials,
            grid: self.grid,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.suite_config().validate().map_err(|e| Error::Config(e.to_string()))?;
        if let Some(ids) = &self.checks {
            if ids.is_empty() || ids.iter().any(|&i| !(1..=10).contains(&i)) {
                return Err(Error::Config("field `checks` must list ids in 1..=10".to_string()));
            }
        }
        Ok(())
    }
}

impl Default for VerifyJob {
    fn default() -> Self {
        Self {
            seed: Self::default_seed(),
            trials: Self::default_trials(),
            grid: GridSpec::default(),
            checks: None,
            out: default_out(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptimizeConfig {
    pub name: String,
    /// One of [`objective::SUITE`].
    pub objective: String,
    pub dim: usize,
    pub agents: usize,
    pub iterations: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub clamp: bool,
    #[serde(default = "default_out")]
    pub out: PathBuf,
}

impl Default for OptimizeConfig {
    fn default() -> Self {
        Self {
            name: "sphere".to_string(),
            objective: "sphere".to_string(),
            dim: 10,
            agents: 30,
            iterations: 500,
            seed: 0,
            clamp: false,
            out: default_out(),
        }
    }
}

impl OptimizeConfig {
    pub fn validate(&self) -> Result<()> {
        if !objective::SUITE.contains(&self.objective.as_str()) {
            return Err(Error::Config(format!(
                "field `objective` must be one of {:?}, got {:?}",
                objective::SUITE,
                self.objective
            )));
        }
        if self.agents < 3 {
            return Err(Error::Config(format!("field `agents` must be at least 3, got {}", self.agents)));
        }
        if self.dim == 0 || self.iterations == 0 {
            return Err(Error::Config("fields `dim` and `iterations` must be positive".to_string()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum ExperimentConfig {
    Dist(DistConfig),
    Moments(MomentsConfig),
    Verify(VerifyJob),
    Optimize(OptimizeConfig),
}

impl ExperimentConfig {
    pub fn command(&self) -> &'static str {
        match self {
            Self::Dist(_) => "dist",
            Self::Moments(_) => "moments",
            Self::Verify(_) => "verify",
            Self::Optimize(_) => "optimize",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Dist(c) => c.validate(),
            Self::Moments(c) => c.validate(),
            Self::Verify(c) => c.validate(),
            Self::Optimize(c) => c.validate(),
        }
    }

    pub fn out(&self) -> &Path {
        match self {
            Self::Dist(c) => &c.out,
            Self::Moments(c) => &c.out,
            Self::Verify(c) => &c.out,
            Self::Optimize(c) => &c.out,
        }
    }

    /// Parses and validates a JSON config.
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let file = File::open(path)
            .map_err(|e| Error::Config(format!("cannot open {}: {e}", path.display())))?;
        let cfg: Self = serde_json::from_reader(BufReader::new(file))
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        cfg.validate()?;
        Ok(cfg)
    }
}

pub const DIST_PRESETS: [&str; 12] = [
    "fig4a", "fig4b", "fig4c", "fig4d", "fig6a", "fig6b", "fig6c", "fig6d", "fig6e", "fig6f", "fig6g",
    "fig6h",
];
pub const MOMENTS_PRESETS: [&str; 4] = ["fig9", "fig11a", "fig11b", "table2"];

/// Named configurations for the published figures and tables.
pub fn preset(name: &str) -> Result<ExperimentConfig> {
    if let Some(k) = name.strip_prefix("fig4").and_then(|s| letter_index(s, 4)) {
        let (a, p, x) = SINGLE_STEP_SETS[k];
        return Ok(ExperimentConfig::Dist(DistConfig::new(name, a, vec![p], x)));
    }
    if let Some(k) = name.strip_prefix("fig6").and_then(|s| letter_index(s, 8)) {
        let (_, p, x) = CONVOLUTION_ROWS[k];
        return Ok(ExperimentConfig::Dist(DistConfig::new(
            name,
            verify::CONVOLUTION_A,
            p.to_vec(),
            x,
        )));
    }
    let base = verify::base_leaders();
    let moments = match name {
        "fig9" => {
            let mut c = MomentsConfig::new(name, base, 60);
            c.order = 4;
            c.trials = 100_000;
            c
        }
        "fig11a" | "fig11b" => {
            let p0 = verify::VARIANCE_P0[usize::from(name == "fig11b")];
            let mut c = MomentsConfig::new(name, base.scaled_to_p0(p0)?, 50);
            c.trials = 100_000;
            c
        }
        "table2" => MomentsConfig::new(name, base.scaled_to_p0(verify::VARIANCE_P0[0])?, 50),
        _ => {
            return Err(Error::Config(format!(
                "unknown preset {name:?}; known: {DIST_PRESETS:?}, {MOMENTS_PRESETS:?}"
            )))
        }
    };
    Ok(ExperimentConfig::Moments(moments))
}

fn letter_index(s: &str, count: usize) -> Option<usize> {
    let mut chars = s.chars();
    let c = chars.next()?;
    if chars.next().is_some() || !c.is_ascii_lowercase() {
        return None;
    }
    let k = (c as u8 - b'a') as usize;
    (k < count).then_some(k)
}

fn params(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

fn create_out(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    Ok(())
}

/// Files written by a command, relative to its output directory.
pub type Written = Vec<String>;

pub fn cmd_dist(cfg: &DistConfig) -> Result<Written> {
    cfg.validate()?;
    create_out(&cfg.out)?;
    let mut written = Vec::new();
    let mut save = |curve: &crate::dist::GridCurve, stem: String, extra: &[(&str, f64)]| -> Result<()> {
        let mut pairs = vec![("a", cfg.a), ("x", cfg.x)];
        pairs.extend_from_slice(extra);
        curve.save(&cfg.out, &stem, params(&pairs))?;
        written.push(format!("{stem}.csv"));
        written.push(format!("{stem}.json"));
        Ok(())
    };

    let (samples, range) = if let [p] = cfg.p[..] {
        let sp = mn_params(cfg.a, p, cfg.x)?;
        let extra = [("p", p), ("m", sp.m), ("n", sp.n)];
        save(&tabulate_pdf_g(&sp, cfg.curve_cells)?, format!("{}_g_pdf", cfg.name), &extra)?;
        save(&tabulate_cdf_g(&sp, cfg.curve_cells)?, format!("{}_g_cdf", cfg.name), &extra)?;
        let range = support_g(&sp).expect("checked non-degenerate");
        (sample_xprime(cfg.a, p, cfg.x, cfg.samples, cfg.seed)?, range)
    } else {
        let p = [cfg.p[0], cfg.p[1], cfg.p[2]];
        for (k, &pk) in p.iter().enumerate() {
            let sp = mn_params(cfg.a, pk, cfg.x)?;
            if sp.is_degenerate() {
                continue;
            }
            let extra = [("p", pk), ("m", sp.m), ("n", sp.n)];
            save(&tabulate_pdf_g(&sp, cfg.curve_cells)?, format!("{}_g{}_pdf", cfg.name, k + 1), &extra)?;
            save(&tabulate_cdf_g(&sp, cfg.curve_cells)?, format!("{}_g{}_cdf", cfg.name, k + 1), &extra)?;
        }
        let h = pdf_h(&cfg.grid, cfg.a, p, cfg.x)?;
        let extra = [("p1", p[0]), ("p2", p[1]), ("p3", p[2])];
        save(&h, format!("{}_h_pdf", cfg.name), &extra)?;
        save(&trapezoid_cdf(&h)?, format!("{}_h_cdf", cfg.name), &extra)?;
        let range = (h.lo(), h.hi());
        (sample_xnext_constant(cfg.a, p, cfg.x, cfg.samples, cfg.seed)?, range)
    };
    let hist = Histogram::from_samples(&samples, range.0, range.1, cfg.bins)?;
    let stem = format!("{}_hist.csv", cfg.name);
    io::write_histogram(&cfg.out.join(&stem), &hist)?;
    written.push(stem);
    Ok(written)
}

pub fn cmd_moments(cfg: &MomentsConfig) -> Result<Written> {
    cfg.validate()?;
    create_out(&cfg.out)?;
    let mut written = Vec::new();
    let p = &cfg.p;
    let traj = moment_trajectory(cfg.order, p, cfg.total, cfg.init)?;
    let dyn_ = variance_sequence(p, cfg.total, cfg.init)?;
    let mut columns: Vec<String> = ["sigma2", "E", "D0", "bound_cor31"].map(String::from).to_vec();
    columns.extend((4..=cfg.order).step_by(2).map(|r| format!("sigma{r}")));
    let mut rows = Vec::with_capacity(cfg.total);
    for t in 1..=cfg.total {
        let mut row = vec![
            traj.variance(t),
            traj.mean(t),
            attractor_d0(t, cfg.total, p)?,
            stability_bounds(dyn_.at(1), t, p, cfg.total)?.0,
        ];
        row.extend((4..=cfg.order).step_by(2).map(|r| traj.central(t, r)));
        rows.push(row);
    }
    let stem = format!("{}_trajectory.csv", cfg.name);
    Table {
        index_name: "t".to_string(),
        columns,
        index: (1..=cfg.total).collect(),
        rows,
    }
    .write(&cfg.out.join(&stem))?;
    written.push(stem);

    let mut rows = Vec::new();
    for &total in &cfg.t_list {
        let d = variance_sequence(p, total, cfg.init)?;
        let gap = (d.terminal() - attractor_d0(total, total, p)?).abs();
        rows.push(vec![gap, stability_bounds(d.at(1), total, p, total)?.1]);
    }
    let stem = format!("{}_table2.csv", cfg.name);
    Table {
        index_name: "T".to_string(),
        columns: vec!["abs_DT_minus_D0".to_string(), "bound_prop35".to_string()],
        index: cfg.t_list.clone(),
        rows,
    }
    .write(&cfg.out.join(&stem))?;
    written.push(stem);

    if cfg.trials > 0 {
        let mut sim = SimConfig::stagnation(vec![*p], cfg.total, cfg.trials, cfg.seed);
        sim.init_lo = cfg.init.0;
        sim.init_hi = cfg.init.1;
        sim.retain_cap = 0;
        let run = simulate_stagnation(&sim)?;
        let stem = format!("{}_mc_trace.csv", cfg.name);
        io::write_trace(&cfg.out.join(&stem), &run.trace(0))?;
        written.push(stem);
    }
    Ok(written)
}

pub fn cmd_verify(job: &VerifyJob) -> Result<(RunReport, Written)> {
    job.validate()?;
    create_out(&job.out)?;
    let suite = Suite::new(job.suite_config())?;
    let report = match &job.checks {
        Some(ids) => suite.run(ids)?,
        None => suite.run_all()?,
    };
    let mut written = vec!["run_report.json".to_string()];
    report.save(&job.out.join("run_report.json"))?;
    for (k, trace) in report.traces.iter().enumerate() {
        let stem = format!("trace_{k}.csv");
        io::write_trace(&job.out.join(&stem), &trace.rows)?;
        written.push(stem);
    }
    Ok((report, written))
}

/// Best position found, as written to `{name}_solution.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Solution {
    pub objective: String,
    pub dim: usize,
    pub seed: u64,
    pub best: Position,
    pub best_fitness: f64,
    pub initial_fitness: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitnessRow {
    pub t: usize,
    pub best_fitness: f64,
}

pub fn cmd_optimize(cfg: &OptimizeConfig, workers: Option<usize>) -> Result<Written> {
    cfg.validate()?;
    let objective = objective::by_name(&cfg.objective, cfg.dim)?;
    let outcome = run_gwo(
        objective.as_ref(),
        &GwoConfig {
            agents: cfg.agents,
            iterations: cfg.iterations,
            seed: cfg.seed,
            clamp: cfg.clamp,
            workers,
        },
    )?;
    create_out(&cfg.out)?;
    let trace_stem = format!("{}_trace.csv", cfg.name);
    let mut w = csv::Writer::from_path(cfg.out.join(&trace_stem))?;
    for (i, &best_fitness) in outcome.trace.iter().enumerate() {
        w.serialize(FitnessRow { t: i + 1, best_fitness })?;
    }
    w.flush()?;
    let solution = Solution {
        objective: cfg.objective.clone(),
        dim: cfg.dim,
        seed: cfg.seed,
        best: outcome.best,
        best_fitness: outcome.best_fitness,
        initial_fitness: outcome.initial_fitness,
    };
    let sol_stem = format!("{}_solution.json", cfg.name);
    std::fs::write(cfg.out.join(&sol_stem), serde_json::to_string_pretty(&solution)?)?;
    Ok(vec![trace_stem, sol_stem])
}

pub fn read_fitness_trace(path: &Path) -> Result<Vec<FitnessRow>> {
    let mut r = csv::Reader::from_path(path)?;
    Ok(r.deserialize().collect::<std::result::Result<_, _>>()?)
}

pub fn read_solution(path: &Path) -> Result<Solution> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}
