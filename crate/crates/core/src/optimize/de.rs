use super::{Halt, OptimizerConfig, OptimizerResult, Tracker};
use crate::error::{Error, Result};
use crate::rng::{self, SeededRng};

/// Differential evolution, `rand/1/bin` with immediate replacement.
///
/// The population is drawn uniformly inside `cfg.bounds` from `cfg.seed`;
/// mutant coordinates that leave the box are redrawn uniformly. Stops when the
/// population's cost spread (max - min) falls below `cfg.tolerance` or the
/// evaluation budget is spent.
pub fn differential_evolution<F>(mut f: F, dim: usize, cfg: &OptimizerConfig) -> Result<OptimizerResult>
where
    F: FnMut(&[f64]) -> f64,
{
    cfg.validate()?;
    if dim == 0 {
        return Err(Error::InvalidArgument("dimension must be at least 1".into()));
    }
    let mut tracker = Tracker::new(&mut f, cfg.max_evaluations);
    let outcome = run(&mut tracker, dim, cfg);
    tracker.finish(outcome)
}

fn run<F: FnMut(&[f64]) -> f64>(
    t: &mut Tracker<'_, F>,
    dim: usize,
    cfg: &OptimizerConfig,
) -> std::result::Result<bool, Halt> {
    let (lo, hi) = cfg.bounds;
    let size = cfg.population.unwrap_or(15 * dim).max(4);
    let mut rng = rng::seeded(cfg.seed);

    let mut population: Vec<Vec<f64>> = (0..size)
        .map(|_| (0..dim).map(|_| rng::uniform(&mut rng, lo, hi)).collect())
        .collect();
    let mut costs = Vec::with_capacity(size);
    for member in &population {
        costs.push(t.eval(member)?);
    }

    loop {
        let (min, max) = costs
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &c| (a.min(c), b.max(c)));
        if max - min < cfg.tolerance {
            return Ok(true);
        }
        for i in 0..size {
            let [r1, r2, r3] = distinct_others(&mut rng, size, i);
            let forced = rng::index(&mut rng, dim);
            let trial: Vec<f64> = (0..dim)
                .map(|j| {
                    if j == forced || rng::unit_f64(&mut rng) < cfg.de_crossover {
                        let v = population[r1][j] + cfg.de_weight * (population[r2][j] - population[r3][j]);
                        if (lo..=hi).contains(&v) {
                            v
                        } else {
                            rng::uniform(&mut rng, lo, hi)
                        }
                    } else {
                        population[i][j]
                    }
                })
                .collect();
            let cost = t.eval(&trial)?;
            if cost <= costs[i] {
                population[i] = trial;
                costs[i] = cost;
            }
        }
    }
}

fn distinct_others(rng: &mut SeededRng, size: usize, exclude: usize) -> [usize; 3] {
    let mut picked = [usize::MAX; 3];
    let mut k = 0;
    while k < 3 {
        let c = rng::index(rng, size);
        if c != exclude && !picked[..k].contains(&c) {
            picked[k] = c;
            k += 1;
        }
    }
    picked
}
