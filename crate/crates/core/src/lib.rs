//! Grey Wolf Optimizer together with the analytic machinery describing its
//! update: exact densities of the guided steps, the convolution density of
//! the updated position, central-moment recursions under stagnation, and a
//! reproducible Monte-Carlo harness that checks all of it.

pub mod dist;
pub mod error;
pub mod gwo;
pub mod harness;
pub mod mc;
pub mod moments;
pub mod objective;
pub mod rng;
pub mod verify;

pub use error::{Error, Result};
pub use gwo::{run_gwo, schedule_a, update_agent, update_leaders, GwoConfig, GwoOutcome, LeaderTriple, Position, Schedule};
