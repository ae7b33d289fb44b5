//! The Grey Wolf Optimizer: coefficient schedule, position update, leader
//! replacement and the full optimization loop.

use std::ops::Deref;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::objective::Objective;
use crate::rng::{domain, CounterRng};

/// A point in the search space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Position(Vec<f64>);

impl Position {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if let Some(j) = coords.iter().position(|v| !v.is_finite()) {
            return Err(Error::arg(
                "position",
                format!("coordinate {j} is not finite ({})", coords[j]),
            ));
        }
        Ok(Self(coords))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for Position {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// The best three agents (alpha, beta, delta) with their fitness values.
///
/// Fitness is kept ordered: `f1 <= f2 <= f3`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LeaderTriple {
    positions: [Position; 3],
    fitness: [f64; 3],
}

impl LeaderTriple {
    pub fn new(positions: [Position; 3], fitness: [f64; 3]) -> Result<Self> {
        let d = positions[0].dim();
        if positions.iter().any(|p| p.dim() != d) {
            return Err(Error::arg("leaders", "leader dimensions differ"));
        }
        if fitness.iter().any(|f| f.is_nan()) {
            return Err(Error::arg("leaders", "fitness is NaN"));
        }
        if !(fitness[0] <= fitness[1] && fitness[1] <= fitness[2]) {
            return Err(Error::arg(
                "leaders",
                format!("fitness not ordered: {fitness:?}"),
            ));
        }
        Ok(Self { positions, fitness })
    }

    /// Leaders with every fitness at +inf, useful when only positions matter
    /// (stagnation analysis).
    pub fn frozen(p1: Position, p2: Position, p3: Position) -> Result<Self> {
        Self::new([p1, p2, p3], [f64::INFINITY; 3])
    }

    /// Picks the best three members of a population. Ties keep index order.
    pub fn from_population(agents: &[Position], fitness: &[f64]) -> Result<Self> {
        if agents.len() < 3 {
            return Err(Error::arg("agents", "need at least three agents"));
        }
        if agents.len() != fitness.len() {
            return Err(Error::arg("fitness", "length differs from population"));
        }
        let mut order: Vec<usize> = (0..agents.len()).collect();
        order.sort_by(|&i, &j| fitness[i].total_cmp(&fitness[j]));
        Self::new(
            [
                agents[order[0]].clone(),
                agents[order[1]].clone(),
                agents[order[2]].clone(),
            ],
            [fitness[order[0]], fitness[order[1]], fitness[order[2]]],
        )
    }

    /// Position of leader `k` (0 = alpha, 1 = beta, 2 = delta).
    pub fn position(&self, k: usize) -> &Position {
        &self.positions[k]
    }

    pub fn fitness(&self) -> [f64; 3] {
        self.fitness
    }

    pub fn dim(&self) -> usize {
        self.positions[0].dim()
    }

    pub fn best(&self) -> (&Position, f64) {
        (&self.positions[0], self.fitness[0])
    }

    /// Leader coordinates of dimension `j`.
    pub fn coords(&self, j: usize) -> [f64; 3] {
        [
            self.positions[0][j],
            self.positions[1][j],
            self.positions[2][j],
        ]
    }

    /// Centroid `(p1 + p2 + p3) / 3`.
    pub fn centroid(&self) -> Vec<f64> {
        (0..self.dim())
            .map(|j| self.coords(j).iter().sum::<f64>() / 3.0)
            .collect()
    }
}

/// Replaces at most one leader slot with `candidate`.
///
/// The comparisons are exactly: slot 1 iff `f < f1`, slot 2 iff
/// `f1 <= f < f2`, slot 3 iff `f2 <= f < f3`. The displaced leader is
/// dropped, nothing shifts down.
pub fn update_leaders(leaders: &LeaderTriple, candidate: &Position, fitness: f64) -> LeaderTriple {
    let [f1, f2, f3] = leaders.fitness;
    let slot = if fitness < f1 {
        Some(0)
    } else if f1 <= fitness && fitness < f2 {
        Some(1)
    } else if f2 <= fitness && fitness < f3 {
        Some(2)
    } else {
        None
    };
    let mut next = leaders.clone();
    if let Some(k) = slot {
        next.positions[k] = candidate.clone();
        next.fitness[k] = fitness;
    }
    next
}

/// Linear coefficient schedule `a(t) = 2 (1 - t / T)` for `t` in `1..=T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Schedule {
    total: usize,
}

impl Schedule {
    pub fn new(total: usize) -> Result<Self> {
        if total == 0 {
            return Err(Error::arg("T", "total iterations must be positive"));
        }
        Ok(Self { total })
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn a(&self, t: usize) -> Result<f64> {
        schedule_a(t, self.total)
    }
}

pub fn schedule_a(t: usize, total: usize) -> Result<f64> {
    if total == 0 {
        return Err(Error::arg("T", "total iterations must be positive"));
    }
    if t == 0 || t > total {
        return Err(Error::arg("t", format!("{t} outside 1..={total}")));
    }
    Ok(2.0 * (1.0 - t as f64 / total as f64))
}

/// One coordinate of the position update.
///
/// Draws `A_k ~ U[-a, a]` then `C_k ~ U[0, 2]` for `k = 1, 2, 3` and returns
/// `(1/3) * sum_k (p_k + A_k |C_k p_k - x|)`.
#[inline]
pub fn update_coordinate<R: Rng + ?Sized>(x: f64, p: [f64; 3], a: f64, rng: &mut R) -> f64 {
    let mut acc = 0.0;
    for pk in p {
        let big_a = a * (2.0 * rng.random::<f64>() - 1.0);
        let big_c = 2.0 * rng.random::<f64>();
        acc += pk + big_a * (big_c * pk - x).abs();
    }
    acc / 3.0
}

/// Moves agent `x` towards the three leaders.
///
/// Six uniforms are consumed per dimension, dimensions in ascending order.
pub fn update_agent<R: Rng + ?Sized>(
    x: &[f64],
    leaders: &LeaderTriple,
    a: f64,
    rng: &mut R,
) -> Result<Position> {
    if !(0.0..=2.0).contains(&a) {
        return Err(Error::arg("a", format!("{a} outside [0, 2]")));
    }
    if x.len() != leaders.dim() {
        return Err(Error::arg(
            "x",
            format!("dimension {} differs from leaders ({})", x.len(), leaders.dim()),
        ));
    }
    let coords = x
        .iter()
        .enumerate()
        .map(|(j, &xj)| update_coordinate(xj, leaders.coords(j), a, rng))
        .collect();
    Ok(Position(coords))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GwoConfig {
    pub agents: usize,
    pub iterations: usize,
    pub seed: u64,
    /// Clamp updated agents back into the objective bounds. Off by default
    /// because the distribution analysis assumes unconstrained updates.
    #[serde(default)]
    pub clamp: bool,
    /// Worker threads; `None` uses the global rayon pool.
    #[serde(default)]
    pub workers: Option<usize>,
}

impl Default for GwoConfig {
    fn default() -> Self {
        Self {
            agents: 30,
            iterations: 500,
            seed: 0,
            clamp: false,
            workers: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GwoOutcome {
    pub best: Position,
    pub best_fitness: f64,
    /// Alpha fitness after initialization.
    pub initial_fitness: f64,
    /// Alpha fitness after each iteration `t = 1..=T`.
    pub trace: Vec<f64>,
}

fn evaluate_all(objective: &dyn Objective, agents: &[Position]) -> Result<Vec<f64>> {
    let fitness: Vec<f64> = agents.par_iter().map(|x| objective.evaluate(x)).collect();
    for (x, &f) in agents.iter().zip(&fitness) {
        if !f.is_finite() {
            return Err(Error::NonFiniteFitness {
                value: f,
                position: x.to_vec(),
            });
        }
    }
    Ok(fitness)
}

/// Runs the optimizer.
///
/// All agents of an iteration are moved first (in parallel), then the leader
/// cascade is applied agent by agent in index order. Agent `i` at iteration
/// `t` reads its uniforms from stream `i`, slot `(t, 0)`, so results do not
/// depend on the worker count.
pub fn run_gwo(objective: &dyn Objective, cfg: &GwoConfig) -> Result<GwoOutcome> {
    if cfg.agents < 3 {
        return Err(Error::arg("N", "need at least three agents"));
    }
    if cfg.iterations == 0 {
        return Err(Error::arg("T", "total iterations must be positive"));
    }
    let dim = objective.dimension();
    let bounds = objective.bounds();
    if bounds.len() != dim || bounds.iter().any(|(lo, hi)| !(lo < hi)) {
        return Err(Error::arg("bounds", "need one non-empty interval per dimension"));
    }
    match cfg.workers {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::arg("workers", e.to_string()))?;
            pool.install(|| gwo_loop(objective, cfg, &bounds))
        }
        None => gwo_loop(objective, cfg, &bounds),
    }
}

fn gwo_loop(objective: &dyn Objective, cfg: &GwoConfig, bounds: &[(f64, f64)]) -> Result<GwoOutcome> {
    let dim = bounds.len();
    let gen = CounterRng::new(cfg.seed, domain::OPTIMIZER);
    let schedule = Schedule::new(cfg.iterations)?;

    let mut agents: Vec<Position> = (0..cfg.agents)
        .into_par_iter()
        .map(|i| {
            let mut rng = gen.slot(i as u64, 0, 0, dim);
            Position(
                bounds
                    .iter()
                    .map(|&(lo, hi)| lo + (hi - lo) * rng.random::<f64>())
                    .collect(),
            )
        })
        .collect();
    let fitness = evaluate_all(objective, &agents)?;
    let mut leaders = LeaderTriple::from_population(&agents, &fitness)?;
    let initial_fitness = leaders.fitness[0];
    let mut trace = Vec::with_capacity(cfg.iterations);

    for t in 1..=cfg.iterations {
        let a = schedule.a(t)?;
        agents = agents
            .par_iter()
            .enumerate()
            .map(|(i, x)| {
                let mut rng = gen.slot(i as u64, t, 0, dim);
                let mut next = update_agent(x, &leaders, a, &mut rng)?;
                if cfg.clamp {
                    for (v, &(lo, hi)) in next.0.iter_mut().zip(bounds) {
                        *v = v.clamp(lo, hi);
                    }
                }
                Ok(next)
            })
            .collect::<Result<_>>()?;
        let fitness = evaluate_all(objective, &agents)?;
        for (x, &f) in agents.iter().zip(&fitness) {
            leaders = update_leaders(&leaders, x, f);
        }
        trace.push(leaders.fitness[0]);
    }

    let (best, best_fitness) = leaders.best();
    Ok(GwoOutcome {
        best: best.clone(),
        best_fitness,
        initial_fitness,
        trace,
    })
}
