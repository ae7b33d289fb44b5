//! Reproducible Monte-Carlo sampling of the update and of stagnating agents.

mod sampling;
mod stagnation;
mod stats;

pub use sampling::{
    guided_step, sample_xnext_constant, sample_xnext_vec, sample_xprime, sample_xprime_vec, BATCH,
};
pub use stagnation::{
    simulate_stagnation, simulate_stagnation_with, SimConfig, SimMode, StagnationRun, TimeStats,
    TraceRow,
};
pub use stats::{
    empirical_central_moment, ks_critical, ks_statistic, trapezoid_cdf, Estimate, Histogram,
};
