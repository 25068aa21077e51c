//! Variational solve loop: circuit, cost, optimizer and final decoding.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::encodings::{
    abe_circuit, abe_cost, abe_decode, abe_graph_cost, abe_param_count, pge_cost, pge_decode, pge_param_count,
    ProjectorEstimates,
};
use crate::error::{Error, Result};
use crate::graph::{BitVector, GridGraph};
use crate::optimize::{self, OptimizerConfig, OptimizerKind, OptimizerResult};
use crate::rng;
use crate::sim::MAX_OBSERVABLE_QUBITS;

pub const DEFAULT_SHOTS: u64 = 65_536;

/// Largest problem for which ABE builds the dense QUBO matrix. Larger
/// problems evaluate the same cost edge by edge.
const DENSE_QUBO_LIMIT: usize = 1 << 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Pge,
    Abe,
    Ace,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Pge, Method::Abe, Method::Ace];

    pub fn name(self) -> &'static str {
        match self {
            Method::Pge => "pge",
            Method::Abe => "abe",
            Method::Ace => "ace",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pge" => Ok(Method::Pge),
            "abe" => Ok(Method::Abe),
            "ace" => Ok(Method::Ace),
            other => Err(Error::InvalidArgument(format!("unknown method {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveConfig {
    pub method: Method,
    /// Ansatz layers (ABE/ACE only).
    pub layers: usize,
    /// Shots per cost evaluation (ABE/ACE only; PGE is evaluated exactly).
    pub shots: u64,
    pub optimizer: OptimizerKind,
    /// `seed` inside is overwritten with a value derived from `seed` below.
    pub optimizer_config: OptimizerConfig,
    pub seed: u64,
}

impl SolveConfig {
    pub fn new(method: Method, optimizer: OptimizerKind, seed: u64) -> Self {
        SolveConfig {
            method,
            layers: 1,
            shots: DEFAULT_SHOTS,
            optimizer,
            optimizer_config: OptimizerConfig::default(),
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    /// Decoded assignment at the best evaluation.
    pub bits: BitVector,
    /// Symmetric cut value of `bits`.
    pub cost: f64,
    pub optimizer: OptimizerResult,
    /// Cut value of the assignment decoded at every evaluation.
    pub cut_trajectory: Vec<f64>,
}

impl Solution {
    /// 1-based count of evaluations until an assignment with cut value
    /// within `tol` of `target` was first decoded.
    pub fn evaluations_to_reach(&self, target: f64, tol: f64) -> Option<usize> {
        self.cut_trajectory.iter().position(|&c| c <= target + tol).map(|i| i + 1)
    }
}

/// Runs one variational optimization of the min-cut of `g`.
///
/// PGE parameters are decoded directly. For ABE and ACE every evaluation draws
/// a fresh histogram with a seed derived from `(seed, evaluation index)`, and
/// the returned assignment is the one decoded from the histogram of the best
/// evaluation.
pub fn solve(g: &GridGraph, cfg: &SolveConfig) -> Result<Solution> {
    let n = g.num_nodes();
    let mut ocfg = cfg.optimizer_config.clone();
    ocfg.seed = rng::derive_seed(cfg.seed, rng::STREAM_OPTIMIZER, 0);

    let dim = match cfg.method {
        Method::Pge => {
            let dim = pge_param_count(n);
            if dim > 1 << MAX_OBSERVABLE_QUBITS {
                return Err(Error::TooLarge(dim, 1 << MAX_OBSERVABLE_QUBITS));
            }
            dim
        }
        Method::Abe | Method::Ace => {
            if cfg.layers == 0 {
                return Err(Error::InvalidArgument("layers must be at least 1".into()));
            }
            if cfg.shots == 0 {
                return Err(Error::InvalidArgument("shots must be at least 1".into()));
            }
            abe_param_count(n, cfg.layers)
        }
    };

    let laplacian = (cfg.method == Method::Pge).then(|| g.laplacian_padded(dim));
    let qubo = (cfg.method == Method::Abe && n <= DENSE_QUBO_LIMIT).then(|| g.to_qubo());

    let mut failure: Option<Error> = None;
    let mut cut_trajectory = Vec::new();
    let mut best: Option<(f64, BitVector)> = None;
    let mut evaluation: u64 = 0;

    let evaluate = |params: &[f64], evaluation: u64| -> Result<(f64, BitVector)> {
        match cfg.method {
            Method::Pge => {
                let cost = pge_cost(params, laplacian.as_ref().expect("built for PGE"))?;
                Ok((cost, pge_decode(params, n)))
            }
            Method::Abe | Method::Ace => {
                let state = abe_circuit(params, n)?;
                let seed = rng::derive_seed(cfg.seed, rng::STREAM_SHOTS, evaluation);
                let hist = state.sample(cfg.shots, seed);
                let est = ProjectorEstimates::from_histogram(&hist, n)?;
                let bits = abe_decode(&est);
                let cost = match cfg.method {
                    Method::Abe => match &qubo {
                        Some(q) => abe_cost(&est, q)?,
                        None => abe_graph_cost(&est, g)?,
                    },
                    _ => g.cut_cost(&bits)?,
                };
                Ok((cost, bits))
            }
        }
    };

    let cost_fn = |params: &[f64]| -> f64 {
        let outcome = evaluate(params, evaluation);
        evaluation += 1;
        match outcome {
            Ok((cost, bits)) => {
                cut_trajectory.push(g.cut_cost_unchecked(bits.bits()));
                // Strict improvement, matching the optimizer's own best-point rule.
                if cost.is_finite() && best.as_ref().is_none_or(|(b, _)| cost < *b) {
                    best = Some((cost, bits));
                }
                cost
            }
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        }
    };

    let result = match cfg.optimizer {
        OptimizerKind::NelderMead => optimize::nelder_mead(cost_fn, &initial_params(cfg, dim), &ocfg),
        OptimizerKind::Powell => optimize::powell(cost_fn, &initial_params(cfg, dim), &ocfg),
        OptimizerKind::DifferentialEvolution => optimize::differential_evolution(cost_fn, dim, &ocfg),
    };
    if let Some(e) = failure {
        return Err(e);
    }
    let result = result?;
    let (_, bits) = best.expect("optimizer performed at least one evaluation");
    let cost = g.cut_cost(&bits)?;
    Ok(Solution { bits, cost, optimizer: result, cut_trajectory })
}

/// Seeded uniform starting point for the local optimizers.
pub fn initial_params(cfg: &SolveConfig, dim: usize) -> Vec<f64> {
    let (lo, hi) = cfg.optimizer_config.bounds;
    let mut r = rng::seeded(rng::derive_seed(cfg.seed, rng::STREAM_INITIAL_PARAMS, 0));
    (0..dim).map(|_| rng::uniform(&mut r, lo, hi)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(method: Method, optimizer: OptimizerKind, seed: u64) -> SolveConfig {
        let mut cfg = SolveConfig::new(method, optimizer, seed);
        cfg.shots = 1024;
        cfg.optimizer_config.max_evaluations = 300;
        cfg
    }

    #[test]
    fn single_node() {
        let g = GridGraph::random(1, 4);
        for method in Method::ALL {
            for opt in [OptimizerKind::NelderMead, OptimizerKind::Powell, OptimizerKind::DifferentialEvolution] {
                let s = solve(&g, &quick(method, opt, 1)).unwrap();
                assert_eq!(s.bits.len(), 1);
                assert_eq!(s.cost, 0.0);
            }
        }
    }

    #[test]
    fn deterministic() {
        let g = GridGraph::random(2, 9);
        for method in Method::ALL {
            let cfg = quick(method, OptimizerKind::NelderMead, 5);
            assert_eq!(solve(&g, &cfg).unwrap(), solve(&g, &cfg).unwrap());
        }
    }

    #[test]
    fn solution_cost_matches_bits() {
        let g = GridGraph::random(2, 10);
        for method in Method::ALL {
            let s = solve(&g, &quick(method, OptimizerKind::Powell, 2)).unwrap();
            assert_eq!(s.cost, g.cut_cost(&s.bits).unwrap());
            assert_eq!(s.cut_trajectory.len(), s.optimizer.evaluations);
            if method != Method::Abe {
                // ACE's and PGE's optimizer costs are the cut (PGE: doubled).
                let scale = if method == Method::Pge { 2.0 } else { 1.0 };
                assert!((s.optimizer.best_cost - scale * s.cost).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn rejects_bad_settings() {
        let g = GridGraph::random(2, 1);
        let mut cfg = quick(Method::Ace, OptimizerKind::NelderMead, 0);
        cfg.layers = 0;
        assert!(solve(&g, &cfg).is_err());
        cfg.layers = 1;
        cfg.shots = 0;
        assert!(solve(&g, &cfg).is_err());
    }

    #[test]
    fn large_ace_instance() {
        let g = GridGraph::random(70, 3);
        let mut cfg = quick(Method::Ace, OptimizerKind::Powell, 1);
        cfg.optimizer_config.max_evaluations = 3;
        let s = solve(&g, &cfg).unwrap();
        assert_eq!(s.bits.len(), 4900);
        cfg.method = Method::Abe;
        assert!(solve(&g, &cfg).unwrap().optimizer.best_cost.is_finite());
        cfg.method = Method::Pge;
        assert!(matches!(solve(&g, &cfg), Err(Error::TooLarge(..))));
    }

    #[test]
    fn method_parsing() {
        assert_eq!("ACE".parse::<Method>().unwrap(), Method::Ace);
        assert!("qaoa".parse::<Method>().is_err());
    }
}
