use std::collections::HashMap;
use std::time::Instant;

use rayon::prelude::*;

use super::record::{relative_error, BenchmarkRecord};
use crate::error::{Error, Result};
use crate::graph::GridGraph;
use crate::optimize::{OptimizerConfig, OptimizerKind};
use crate::oracle::{brute_force_min_cut, MAX_VARIABLES};
use crate::solve::{solve, Method, SolveConfig, DEFAULT_SHOTS};

pub const DEFAULT_SEEDS: [u64; 5] = [111, 222, 333, 444, 555];
pub const DEFAULT_SIZES: [usize; 2] = [4, 16];

/// Cartesian sweep. Sizes are pixel counts of square grids.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub sizes: Vec<usize>,
    pub methods: Vec<Method>,
    pub optimizers: Vec<OptimizerKind>,
    pub layers: Vec<usize>,
    pub seeds: Vec<u64>,
    pub shots: u64,
    pub optimizer_config: OptimizerConfig,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            sizes: DEFAULT_SIZES.to_vec(),
            methods: vec![Method::Ace],
            optimizers: vec![OptimizerKind::DifferentialEvolution],
            layers: vec![1],
            seeds: DEFAULT_SEEDS.to_vec(),
            shots: DEFAULT_SHOTS,
            optimizer_config: OptimizerConfig::default(),
        }
    }
}

/// Side of the square grid with `size` pixels.
pub fn grid_side(size: usize) -> Result<usize> {
    if size > MAX_VARIABLES {
        return Err(Error::TooLarge(size, MAX_VARIABLES));
    }
    let side = (1..=size).find(|s| s * s >= size).unwrap_or(0);
    if size == 0 || side * side != size {
        return Err(Error::InvalidArgument(format!("size {size} is not a positive perfect square")));
    }
    Ok(side)
}

/// Runs every cell (size x method x optimizer x layers x seed, in that
/// nesting order) in parallel. The instance and the solver are both seeded
/// with the cell's seed, so records do not depend on scheduling.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<BenchmarkRecord>> {
    let sides = cfg.sizes.iter().map(|&s| grid_side(s)).collect::<Result<Vec<_>>>()?;
    cfg.optimizer_config.validate()?;

    let mut cells = Vec::new();
    for (&size, &side) in cfg.sizes.iter().zip(&sides) {
        for &method in &cfg.methods {
            for &optimizer in &cfg.optimizers {
                for &layers in &cfg.layers {
                    for &seed in &cfg.seeds {
                        cells.push((size, side, method, optimizer, layers, seed));
                    }
                }
            }
        }
    }
    if cells.is_empty() {
        return Ok(Vec::new());
    }

    let mut instances: Vec<(usize, u64)> = cells.iter().map(|c| (c.1, c.5)).collect();
    instances.sort_unstable();
    instances.dedup();
    let exact: HashMap<(usize, u64), f64> = instances
        .par_iter()
        .map(|&(side, seed)| {
            brute_force_min_cut(&GridGraph::random(side, seed)).map(|s| ((side, seed), s.value))
        })
        .collect::<Result<_>>()?;

    cells
        .par_iter()
        .map(|&(size, side, method, optimizer, layers, seed)| {
            let g = GridGraph::random(side, seed);
            let mut sc = SolveConfig::new(method, optimizer, seed);
            sc.layers = layers;
            sc.shots = cfg.shots;
            sc.optimizer_config = cfg.optimizer_config.clone();
            let start = Instant::now();
            let solution = solve(&g, &sc)?;
            let wall_time_s = start.elapsed().as_secs_f64();
            let exact = exact[&(side, seed)];
            Ok(BenchmarkRecord {
                seed,
                size,
                method,
                optimizer,
                layers,
                shots: cfg.shots,
                obtained: solution.cost,
                exact,
                rel_error: relative_error(solution.cost, exact),
                evaluations: solution.optimizer.evaluations,
                wall_time_s,
            })
        })
        .collect()
}
