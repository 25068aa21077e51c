//! Exhaustive exact solvers used as the ground-truth baseline.
//!
//! Every assignment is evaluated with the same routine the rest of the crate
//! uses, so reported values match `cut_cost` / `qubo_value` bit for bit. Ties
//! go to the smallest assignment index (node 0 is the least significant bit).

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{BitVector, GridGraph, QuboMatrix};

pub const MAX_VARIABLES: usize = 24;

/// Assignments per parallel block.
const BLOCK: u64 = 1 << 12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactSolution {
    pub argmin: BitVector,
    pub value: f64,
    pub evaluated: u64,
}

pub fn brute_force_min_cut(g: &GridGraph) -> Result<ExactSolution> {
    enumerate(g.num_nodes(), |bits| g.cut_cost_unchecked(bits))
}

pub fn brute_force_qubo(q: &QuboMatrix) -> Result<ExactSolution> {
    enumerate(q.dim(), |bits| q.value_unchecked(bits))
}

fn enumerate<F>(n: usize, objective: F) -> Result<ExactSolution>
where
    F: Fn(&[bool]) -> f64 + Sync,
{
    if n > MAX_VARIABLES {
        return Err(Error::TooLarge(n, MAX_VARIABLES));
    }
    let total = 1u64 << n;
    let blocks = total.div_ceil(BLOCK);
    let (value, index) = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut bits = vec![false; n];
            let mut best = (f64::INFINITY, u64::MAX);
            for idx in b * BLOCK..((b + 1) * BLOCK).min(total) {
                for (i, bit) in bits.iter_mut().enumerate() {
                    *bit = (idx >> i) & 1 == 1;
                }
                let v = objective(&bits);
                if v < best.0 {
                    best = (v, idx);
                }
            }
            best
        })
        .reduce(|| (f64::INFINITY, u64::MAX), pick);
    Ok(ExactSolution { argmin: BitVector::from_index(index, n), value, evaluated: total })
}

/// Lower value wins; equal values go to the lower index.
fn pick(a: (f64, u64), b: (f64, u64)) -> (f64, u64) {
    if b.0 < a.0 || (b.0 == a.0 && b.1 < a.1) {
        b
    } else {
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;
    use crate::rng;

    #[test]
    fn single_node() {
        let s = brute_force_min_cut(&GridGraph::random(1, 0)).unwrap();
        assert_eq!(s.value, 0.0);
        assert_eq!(s.evaluated, 2);
        assert_eq!(s.argmin.to_string(), "0");
    }

    #[test]
    fn negative_edge_is_cut() {
        let g = GridGraph::from_edges(2, 1, vec![Edge { u: 0, v: 1, w: -0.5 }]).unwrap();
        let s = brute_force_min_cut(&g).unwrap();
        assert_eq!(s.value, -0.5);
        assert_eq!(s.argmin.to_string(), "10");
    }

    #[test]
    fn qubo_tie_break() {
        let s = brute_force_qubo(&QuboMatrix::zeros(5)).unwrap();
        assert_eq!(s.value, 0.0);
        assert_eq!(s.argmin, BitVector::zeros(5));
        let s = brute_force_qubo(&QuboMatrix::identity(5)).unwrap();
        assert_eq!(s.argmin, BitVector::zeros(5));
        assert_eq!(s.value, 0.0);
    }

    #[test]
    fn random_spot_check_4x4() {
        let g = GridGraph::random(4, 77);
        let s = brute_force_min_cut(&g).unwrap();
        assert_eq!(s.evaluated, 1 << 16);
        let mut r = rng::seeded(5);
        for _ in 0..1000 {
            let x = BitVector::from_index(rng::index(&mut r, 1 << 16) as u64, 16);
            assert!(s.value <= g.cut_cost(&x).unwrap());
        }
        assert!(s.value <= 0.0);
        assert_eq!(g.cut_cost(&s.argmin).unwrap(), s.value);
        assert_eq!(g.cut_cost(&s.argmin.complement()).unwrap(), s.value);
    }

    #[test]
    fn parallel_matches_sequential_scan() {
        let g = GridGraph::random_rect(7, 2, 3);
        let s = brute_force_min_cut(&g).unwrap();
        let mut best = (f64::INFINITY, 0u64);
        for idx in 0..1u64 << 14 {
            let v = g.cut_cost(&BitVector::from_index(idx, 14)).unwrap();
            if v < best.0 {
                best = (v, idx);
            }
        }
        assert_eq!((s.value, s.argmin.to_index()), best);
    }

    #[test]
    fn refuses_large_instances() {
        let g = GridGraph::random_rect(5, 5, 0);
        assert_eq!(brute_force_min_cut(&g), Err(Error::TooLarge(25, MAX_VARIABLES)));
        assert!(brute_force_qubo(&QuboMatrix::zeros(25)).is_err());
    }
}
