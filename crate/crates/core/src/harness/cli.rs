//! Command-line interface of `gwo-lab`.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 usage or
//! configuration error.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use super::{
    cmd_dist, cmd_moments, cmd_optimize, cmd_verify, preset, ExperimentConfig, OptimizeConfig, VerifyJob,
    Written,
};
use crate::error::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "gwo-lab", version, about = "Grey Wolf Optimizer densities, moments and checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Common {
    /// JSON experiment config; its `command` must match the subcommand.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Named config such as fig4a, fig6g, fig9, fig11a or table2.
    #[arg(long, conflicts_with = "config")]
    pub preset: Option<String>,
    #[arg(long, value_name = "U64")]
    pub seed: Option<u64>,
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, value_name = "N")]
    pub workers: Option<usize>,
    /// Monte-Carlo sample or trial count.
    #[arg(long, value_name = "N")]
    pub trials: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Densities of the guided step and of the updated position, plus a histogram.
    Dist(Common),
    /// Moment trajectory and terminal-variance table under stagnation.
    Moments {
        #[command(flatten)]
        common: Common,
        /// Highest even central moment to export.
        #[arg(long)]
        order: Option<usize>,
    },
    /// Runs the acceptance checks and writes a run report.
    Verify(Common),
    /// Runs the optimizer on a benchmark function.
    Optimize {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        objective: Option<String>,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        agents: Option<usize>,
        #[arg(long)]
        iterations: Option<usize>,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Dist(c) | Command::Verify(c) => c,
            Command::Moments { common, .. } | Command::Optimize { common, .. } => common,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::Dist(_) => "dist",
            Command::Moments { .. } => "moments",
            Command::Verify(_) => "verify",
            Command::Optimize { .. } => "optimize",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    ChecksFailed,
}

pub fn exit_code(result: &Result<Status>) -> u8 {
    match result {
        Ok(Status::Success) => 0,
        Ok(Status::ChecksFailed) => 1,
        Err(_) => 2,
    }
}

/// Builds the validated config: file, preset or default, then flag overrides.
pub fn resolve(command: &Command) -> Result<ExperimentConfig> {
    let common = command.common();
    let mut cfg = match (&common.config, &common.preset) {
        (Some(path), _) => ExperimentConfig::load(path)?,
        (None, Some(name)) => preset(name)?,
        (None, None) => match command {
            Command::Dist(_) => preset("fig4a")?,
            Command::Moments { .. } => preset("fig9")?,
            Command::Verify(_) => ExperimentConfig::Verify(VerifyJob::default()),
            Command::Optimize { .. } => ExperimentConfig::Optimize(OptimizeConfig::default()),
        },
    };
    if cfg.command() != command.name() {
        return Err(Error::Config(format!(
            "config is for `{}`, not `{}`",
            cfg.command(),
            command.name()
        )));
    }
    match &mut cfg {
        ExperimentConfig::Dist(c) => {
            override_opt(&mut c.seed, common.seed);
            override_opt(&mut c.samples, common.trials);
            override_opt(&mut c.out, common.out.clone());
        }
        ExperimentConfig::Moments(c) => {
            override_opt(&mut c.seed, common.seed);
            override_opt(&mut c.trials, common.trials);
            override_opt(&mut c.out, common.out.clone());
            if let Command::Moments { order, .. } = command {
                override_opt(&mut c.order, *order);
            }
        }
        ExperimentConfig::Verify(c) => {
            override_opt(&mut c.seed, common.seed);
            override_opt(&mut c.trials, common.trials);
            override_opt(&mut c.out, common.out.clone());
        }
        ExperimentConfig::Optimize(c) => {
            override_opt(&mut c.seed, common.seed);
            override_opt(&mut c.out, common.out.clone());
            if let Command::Optimize { objective, dim, agents, iterations, .. } = command {
                override_opt(&mut c.objective, objective.clone());
                override_opt(&mut c.dim, *dim);
                override_opt(&mut c.agents, *agents);
                override_opt(&mut c.iterations, *iterations);
            }
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

fn override_opt<T>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}

fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    match workers {
        None => f(),
        Some(0) => Err(Error::Config("--workers must be positive".to_string())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Config(e.to_string()))?
            .install(f),
    }
}

/// Runs a parsed command line, printing the written files and any check
/// results to stdout.
pub fn execute(cli: &Cli) -> Result<Status> {
    let cfg = resolve(&cli.command)?;
    let workers = cli.command.common().workers;
    let out = cfg.out().to_path_buf();
    let (written, status): (Written, Status) = with_workers(workers, || match &cfg {
        ExperimentConfig::Dist(c) => Ok((cmd_dist(c)?, Status::Success)),
        ExperimentConfig::Moments(c) => Ok((cmd_moments(c)?, Status::Success)),
        ExperimentConfig::Optimize(c) => Ok((cmd_optimize(c, workers)?, Status::Success)),
        ExperimentConfig::Verify(c) => {
            let (report, written) = cmd_verify(c)?;
            if report.low_power {
                println!(
                    "low-power run: {} trials, statistical limits widened by {:.2}",
                    c.trials, report.tolerance_scale
                );
            }
            for check in &report.checks {
                println!("{}", check.summary());
            }
            let status = if report.passed() { Status::Success } else { Status::ChecksFailed };
            Ok((written, status))
        }
    })?;
    for file in written {
        println!("wrote {}", out.join(file).display());
    }
    Ok(status)
}
