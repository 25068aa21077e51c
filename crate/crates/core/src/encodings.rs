//! Qubit-efficient encodings of an `n`-variable binary problem.
//!
//! * **PGE** (parametric gate encoding): `ceil(log2 n)` qubits, one phase
//!   parameter per (padded) variable. The state is `H^{⊗q}` followed by a
//!   diagonal gate with phases `pi * f(theta_k)`, `f` the half-interval step.
//!   The cost is the Laplacian energy scaled by `2^q / 2`.
//! * **ABE** (ancilla basis encoding): `r = ceil(log2 n)` register qubits plus
//!   one ancilla. Register basis state `i` carries variable `i`; the ancilla's
//!   conditional probabilities decide its value. The cost is the projector
//!   ratio form of `x^T Q x`.
//! * **ACE** (adaptive cost encoding): the ABE circuit, but the measured
//!   distribution is decoded to a bit vector first and the cost is that
//!   vector's cut value.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::graph::{BitVector, GridGraph, LaplacianMatrix, QuboMatrix};
use crate::sim::{ShotHistogram, Statevector};

/// `ceil(log2 n)`, with `n = 1` mapping to 0.
pub fn ceil_log2(n: usize) -> usize {
    n.next_power_of_two().trailing_zeros() as usize
}

/// Register qubits for the ancilla encodings.
pub fn register_qubits(n: usize) -> usize {
    ceil_log2(n)
}

/// Qubits of a PGE circuit. A single variable still needs one qubit.
pub fn pge_qubits(n: usize) -> usize {
    ceil_log2(n).max(1)
}

/// Number of PGE parameters (one per padded variable).
pub fn pge_param_count(n: usize) -> usize {
    1 << pge_qubits(n)
}

/// Number of ABE/ACE parameters: one `R_y` per qubit per layer.
pub fn abe_param_count(n: usize, layers: usize) -> usize {
    layers * (register_qubits(n) + 1)
}

/// Half-interval step decoding of a phase parameter: `[0, pi) -> 0`,
/// `[pi, 2pi) -> 1`, after reduction modulo `2pi`.
fn step(theta: f64) -> bool {
    theta.rem_euclid(TAU) >= PI
}

/// Decodes PGE parameters, keeping the first `n` (unpadded) bits.
pub fn pge_decode(params: &[f64], n: usize) -> BitVector {
    params.iter().take(n).map(|&t| step(t)).collect::<Vec<_>>().into()
}

/// Uniform superposition with the sign of amplitude `k` flipped when
/// `theta_k` decodes to 1.
pub fn pge_state(params: &[f64]) -> Result<Statevector> {
    if !params.len().is_power_of_two() || params.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "PGE needs 2^q parameters with q >= 1, got {}",
            params.len()
        )));
    }
    let q = ceil_log2(params.len());
    let mut s = Statevector::new(q)?;
    for qubit in 0..q {
        s.h(qubit)?;
    }
    let phases: Vec<f64> = params.iter().map(|&t| if step(t) { PI } else { 0.0 }).collect();
    s.diagonal(&phases)?;
    Ok(s)
}

/// `(2^q / 2) <psi| L |psi>`, which equals twice the cut value of the decoded
/// vector.
pub fn pge_cost(params: &[f64], laplacian: &LaplacianMatrix) -> Result<f64> {
    if params.len() != laplacian.dim() {
        return Err(Error::DimensionMismatch { expected: laplacian.dim(), actual: params.len() });
    }
    let s = pge_state(params)?;
    Ok(params.len() as f64 / 2.0 * s.expectation(laplacian.matrix())?)
}

/// Hardware-efficient ansatz on `r + 1` qubits: Hadamards on every qubit, then
/// per layer a CNOT chain `(0,1), (1,2), ..., (r-1,r)` followed by one `R_y`
/// per qubit. Parameters are consumed layer-major, qubit-minor.
pub fn abe_circuit(params: &[f64], n: usize) -> Result<Statevector> {
    if n == 0 {
        return Err(Error::InvalidArgument("problem size must be positive".into()));
    }
    let qubits = register_qubits(n) + 1;
    if params.is_empty() || !params.len().is_multiple_of(qubits) {
        return Err(Error::InvalidArgument(format!(
            "parameter count {} is not a positive multiple of {qubits}",
            params.len()
        )));
    }
    let mut s = Statevector::new(qubits)?;
    for q in 0..qubits {
        s.h(q)?;
    }
    for layer in params.chunks(qubits) {
        for q in 0..qubits - 1 {
            s.cnot(q, q + 1)?;
        }
        for (q, &theta) in layer.iter().enumerate() {
            s.ry(q, theta)?;
        }
    }
    Ok(s)
}

/// Per-variable projector expectations: `p[i]` is the probability of register
/// state `i` (either ancilla value), `p1[i]` of register state `i` with the
/// ancilla in `|1>`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectorEstimates {
    pub p: Vec<f64>,
    pub p1: Vec<f64>,
    /// Lower clamp for `p[i]` when used as a denominator.
    pub floor: f64,
}

impl ProjectorEstimates {
    /// Estimates from measurement counts; the denominator floor is `1/shots`.
    pub fn from_histogram(h: &ShotHistogram, n: usize) -> Result<Self> {
        let qubits = register_qubits(n) + 1;
        if h.num_qubits() != qubits {
            return Err(Error::DimensionMismatch { expected: qubits, actual: h.num_qubits() });
        }
        let shots = h.shots().max(1) as f64;
        let (p, p1) = (0..n)
            .map(|i| {
                let zero = h.count(2 * i) as f64;
                let one = h.count(2 * i + 1) as f64;
                ((zero + one) / shots, one / shots)
            })
            .unzip();
        Ok(ProjectorEstimates { p, p1, floor: 1.0 / shots })
    }

    /// Exact expectations from basis-state probabilities (infinite-shot
    /// limit). The floor is machine epsilon.
    pub fn from_probabilities(probs: &[f64], n: usize) -> Result<Self> {
        let expected = 1 << (register_qubits(n) + 1);
        if probs.len() != expected {
            return Err(Error::DimensionMismatch { expected, actual: probs.len() });
        }
        let (p, p1) = (0..n).map(|i| (probs[2 * i] + probs[2 * i + 1], probs[2 * i + 1])).unzip();
        Ok(ProjectorEstimates { p, p1, floor: f64::EPSILON })
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    /// `p1[i] / max(p[i], floor)`.
    fn ratios(&self) -> Vec<f64> {
        self.p.iter().zip(&self.p1).map(|(&p, &p1)| p1 / p.max(self.floor)).collect()
    }
}

/// `x_i = 0` when the ancilla-0 probability of register state `i` strictly
/// exceeds its ancilla-1 probability, otherwise 1 (unobserved states decode
/// to 1).
pub fn abe_decode(est: &ProjectorEstimates) -> BitVector {
    est.p
        .iter()
        .zip(&est.p1)
        .map(|(&p, &p1)| !(p - p1 > p1))
        .collect::<Vec<_>>()
        .into()
}

/// Projector-ratio cost `sum_{i != j} Q_ij r_i r_j + sum_i Q_ii r_i` with
/// `r_i = p1_i / p_i`.
///
/// The ordered-pair sum reads `Q` as the symmetric matrix `(Q + Q^T) / 2`, so
/// each unordered pair contributes its upper-triangle entry once.
pub fn abe_cost(est: &ProjectorEstimates, q: &QuboMatrix) -> Result<f64> {
    if q.dim() != est.len() {
        return Err(Error::DimensionMismatch { expected: est.len(), actual: q.dim() });
    }
    let r = est.ratios();
    let n = r.len();
    let mut total = 0.0;
    for i in 0..n {
        total += q.get(i, i) * r[i];
        for j in i + 1..n {
            // Q_sym(i,j) r_i r_j + Q_sym(j,i) r_j r_i
            total += q.get(i, j) * r[i] * r[j];
        }
    }
    Ok(total)
}

/// [`abe_cost`] for `Q = to_qubo(g)`, summed edge by edge:
/// `w (r_u + r_v - 2 r_u r_v)` per edge. Needs no dense matrix.
pub fn abe_graph_cost(est: &ProjectorEstimates, g: &GridGraph) -> Result<f64> {
    if g.num_nodes() != est.len() {
        return Err(Error::DimensionMismatch { expected: est.len(), actual: g.num_nodes() });
    }
    let r = est.ratios();
    Ok(g.edges().iter().fold(0.0, |acc, e| acc + e.w * (r[e.u] + r[e.v] - 2.0 * r[e.u] * r[e.v])))
}

/// Cut value of the bit vector decoded from a measured ABE circuit.
pub fn ace_cost(h: &ShotHistogram, g: &GridGraph) -> Result<f64> {
    let est = ProjectorEstimates::from_histogram(h, g.num_nodes())?;
    g.cut_cost(&abe_decode(&est))
}
