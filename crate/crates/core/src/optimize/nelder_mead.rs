use super::{clamp_into, Halt, OptimizerConfig, OptimizerResult, Tracker};
use crate::error::{Error, Result};

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

/// Nelder–Mead downhill simplex, with points clamped into `cfg.bounds`.
///
/// Stops when the cost spread over the simplex drops below `cfg.tolerance`,
/// when the simplex collapses below `cfg.x_tolerance`, or when the budget runs
/// out.
pub fn nelder_mead<F>(mut f: F, x0: &[f64], cfg: &OptimizerConfig) -> Result<OptimizerResult>
where
    F: FnMut(&[f64]) -> f64,
{
    cfg.validate()?;
    if x0.is_empty() {
        return Err(Error::InvalidArgument("dimension must be at least 1".into()));
    }
    let mut tracker = Tracker::new(&mut f, cfg.max_evaluations);
    let outcome = run(&mut tracker, x0, cfg);
    tracker.finish(outcome)
}

fn run<F: FnMut(&[f64]) -> f64>(
    t: &mut Tracker<'_, F>,
    x0: &[f64],
    cfg: &OptimizerConfig,
) -> std::result::Result<bool, Halt> {
    let dim = x0.len();
    let (lo, hi) = cfg.bounds;

    let mut start = x0.to_vec();
    clamp_into(&mut start, cfg.bounds);
    let mut simplex = vec![start.clone()];
    for i in 0..dim {
        let mut v = start.clone();
        v[i] = if v[i] + cfg.initial_step <= hi { v[i] + cfg.initial_step } else { v[i] - cfg.initial_step };
        v[i] = v[i].clamp(lo, hi);
        simplex.push(v);
    }
    let mut costs = Vec::with_capacity(dim + 1);
    for v in &simplex {
        costs.push(t.eval(v)?);
    }

    let point = |base: &[f64], dir_from: &[f64], coeff: f64| -> Vec<f64> {
        // base + coeff * (base - dir_from)
        let mut p: Vec<f64> = base.iter().zip(dir_from).map(|(b, d)| b + coeff * (b - d)).collect();
        clamp_into(&mut p, cfg.bounds);
        p
    };

    loop {
        let mut order: Vec<usize> = (0..=dim).collect();
        order.sort_by(|&a, &b| costs[a].total_cmp(&costs[b]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        costs = order.iter().map(|&i| costs[i]).collect();

        if costs[dim] - costs[0] < cfg.tolerance {
            return Ok(true);
        }
        let diameter = simplex[1..]
            .iter()
            .flat_map(|v| v.iter().zip(&simplex[0]).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if diameter < cfg.x_tolerance {
            return Ok(true);
        }

        let mut centroid = vec![0.0; dim];
        for v in &simplex[..dim] {
            for (c, x) in centroid.iter_mut().zip(v) {
                *c += x / dim as f64;
            }
        }

        let worst = simplex[dim].clone();
        let reflected = point(&centroid, &worst, REFLECT);
        let f_reflected = t.eval(&reflected)?;

        if f_reflected < costs[0] {
            let expanded = point(&centroid, &worst, EXPAND);
            let f_expanded = t.eval(&expanded)?;
            if f_expanded < f_reflected {
                simplex[dim] = expanded;
                costs[dim] = f_expanded;
            } else {
                simplex[dim] = reflected;
                costs[dim] = f_reflected;
            }
            continue;
        }
        if f_reflected < costs[dim - 1] {
            simplex[dim] = reflected;
            costs[dim] = f_reflected;
            continue;
        }

        let (contracted, f_contracted, accept) = if f_reflected < costs[dim] {
            let c = point(&centroid, &worst, CONTRACT);
            let fc = t.eval(&c)?;
            (c, fc, fc <= f_reflected)
        } else {
            let c = point(&centroid, &worst, -CONTRACT);
            let fc = t.eval(&c)?;
            (c, fc, fc < costs[dim])
        };
        if accept {
            simplex[dim] = contracted;
            costs[dim] = f_contracted;
            continue;
        }

        let best = simplex[0].clone();
        for i in 1..=dim {
            let mut v: Vec<f64> = best.iter().zip(&simplex[i]).map(|(b, x)| b + SHRINK * (x - b)).collect();
            clamp_into(&mut v, cfg.bounds);
            costs[i] = t.eval(&v)?;
            simplex[i] = v;
        }
    }
}
