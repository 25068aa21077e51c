//! Derivative-free minimizers for the variational cost functions.
//!
//! One "iteration" is one cost-function evaluation, i.e. one circuit
//! execution. All three methods are deterministic for a deterministic cost
//! function and a fixed configuration.

mod de;
mod nelder_mead;
mod powell;

pub use de::differential_evolution;
pub use nelder_mead::nelder_mead;
pub use powell::powell;

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OptimizerKind {
    #[serde(rename = "nelder-mead")]
    NelderMead,
    #[serde(rename = "powell")]
    Powell,
    #[serde(rename = "de")]
    DifferentialEvolution,
}

impl OptimizerKind {
    pub fn name(self) -> &'static str {
        match self {
            OptimizerKind::NelderMead => "nelder-mead",
            OptimizerKind::Powell => "powell",
            OptimizerKind::DifferentialEvolution => "de",
        }
    }
}

impl fmt::Display for OptimizerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OptimizerKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "nelder-mead" | "neldermead" | "nm" => Ok(OptimizerKind::NelderMead),
            "powell" => Ok(OptimizerKind::Powell),
            "de" | "differential-evolution" => Ok(OptimizerKind::DifferentialEvolution),
            other => Err(Error::InvalidArgument(format!("unknown optimizer {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerConfig {
    pub max_evaluations: usize,
    /// Cost-spread (Nelder–Mead, DE) or relative-decrease (Powell) threshold.
    pub tolerance: f64,
    /// Nelder–Mead also stops once every vertex lies within this distance of
    /// the best one.
    pub x_tolerance: f64,
    /// Edge length of the initial Nelder–Mead simplex.
    pub initial_step: f64,
    /// DE population size; `None` means `15 * dim`.
    pub population: Option<usize>,
    pub de_weight: f64,
    pub de_crossover: f64,
    pub bounds: (f64, f64),
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            max_evaluations: 100_000,
            tolerance: 1e-6,
            x_tolerance: 1e-8,
            initial_step: TAU / 4.0,
            population: None,
            de_weight: 0.8,
            de_crossover: 0.9,
            bounds: (0.0, TAU),
            seed: 0,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidArgument(msg.into()));
        if self.max_evaluations < 1 {
            return bad("max_evaluations must be at least 1");
        }
        if !(self.de_crossover > 0.0 && self.de_crossover <= 1.0) {
            return bad("DE crossover rate must lie in (0, 1]");
        }
        if !(self.de_weight > 0.0) {
            return bad("DE weight must be positive");
        }
        if !(self.bounds.0 < self.bounds.1) {
            return bad("lower bound must be below upper bound");
        }
        if self.population.is_some_and(|p| p < 4) {
            return bad("DE population must be at least 4");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizerResult {
    pub best_params: Vec<f64>,
    pub best_cost: f64,
    pub evaluations: usize,
    /// `(evaluation index, cost)` for every evaluation, 0-based.
    pub trajectory: Vec<(usize, f64)>,
    pub converged: bool,
}

impl OptimizerResult {
    /// Running minimum of the trajectory.
    pub fn running_min(&self) -> Vec<f64> {
        self.trajectory
            .iter()
            .scan(f64::INFINITY, |m, &(_, c)| {
                *m = m.min(c);
                Some(*m)
            })
            .collect()
    }
}

/// Why an optimizer loop stopped before its own convergence test.
#[derive(Debug)]
pub(crate) enum Halt {
    Budget,
    NonFinite { value: f64, evaluation: usize },
}

/// Counts evaluations, records the trajectory and keeps the best point.
pub(crate) struct Tracker<'a, F> {
    f: &'a mut F,
    max_evaluations: usize,
    trajectory: Vec<(usize, f64)>,
    best: Option<(Vec<f64>, f64)>,
}

impl<'a, F: FnMut(&[f64]) -> f64> Tracker<'a, F> {
    pub(crate) fn new(f: &'a mut F, max_evaluations: usize) -> Self {
        Tracker { f, max_evaluations, trajectory: Vec::new(), best: None }
    }

    pub(crate) fn eval(&mut self, x: &[f64]) -> std::result::Result<f64, Halt> {
        let index = self.trajectory.len();
        if index >= self.max_evaluations {
            return Err(Halt::Budget);
        }
        let cost = (self.f)(x);
        if !cost.is_finite() {
            return Err(Halt::NonFinite { value: cost, evaluation: index });
        }
        self.trajectory.push((index, cost));
        if self.best.as_ref().is_none_or(|(_, b)| cost < *b) {
            self.best = Some((x.to_vec(), cost));
        }
        Ok(cost)
    }

    pub(crate) fn finish(self, outcome: std::result::Result<bool, Halt>) -> Result<OptimizerResult> {
        let converged = match outcome {
            Ok(c) => c,
            Err(Halt::Budget) => false,
            Err(Halt::NonFinite { value, evaluation }) => {
                return Err(Error::NonFiniteCost { value, evaluation });
            }
        };
        let (best_params, best_cost) = self
            .best
            .ok_or_else(|| Error::InvalidArgument("no evaluations performed".into()))?;
        Ok(OptimizerResult {
            best_params,
            best_cost,
            evaluations: self.trajectory.len(),
            trajectory: self.trajectory,
            converged,
        })
    }
}

pub(crate) fn clamp_into(x: &mut [f64], (lo, hi): (f64, f64)) {
    for v in x {
        *v = v.clamp(lo, hi);
    }
}
