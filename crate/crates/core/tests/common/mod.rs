//! Reference implementations that share no code with the library: dense
//! unitaries built from Kronecker products, cut values read off an explicit
//! adjacency matrix, and a plain sequential exhaustive search.

#![allow(dead_code)]

use num_complex::Complex64;
use vqseg::GridGraph;

pub type Matrix = Vec<Vec<Complex64>>;

pub enum Gate {
    H(usize),
    Ry(usize, f64),
    Cnot(usize, usize),
    Diagonal(Vec<f64>),
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (n, m) = (a.len(), b.len());
    let mut out = vec![vec![c(0.0); n * m]; n * m];
    for i in 0..n {
        for j in 0..n {
            for k in 0..m {
                for l in 0..m {
                    out[i * m + k][j * m + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

fn identity(dim: usize) -> Matrix {
    (0..dim).map(|i| (0..dim).map(|j| c(if i == j { 1.0 } else { 0.0 })).collect()).collect()
}

/// Single-qubit gate on `qubit` of `q`, qubit 0 being the leftmost factor.
fn embed(gate: &Matrix, qubit: usize, q: usize) -> Matrix {
    let id = identity(2);
    let mut out = vec![vec![c(1.0)]];
    for k in 0..q {
        out = kron(&out, if k == qubit { gate } else { &id });
    }
    out
}

pub fn unitary(gate: &Gate, q: usize) -> Matrix {
    let dim = 1 << q;
    match gate {
        Gate::H(k) => {
            let s = std::f64::consts::FRAC_1_SQRT_2;
            embed(&vec![vec![c(s), c(s)], vec![c(s), c(-s)]], *k, q)
        }
        Gate::Ry(k, t) => {
            let (s, co) = (t / 2.0).sin_cos();
            embed(&vec![vec![c(co), c(-s)], vec![c(s), c(co)]], *k, q)
        }
        Gate::Cnot(ctl, tgt) => {
            let mut m = vec![vec![c(0.0); dim]; dim];
            let (cb, tb) = (1 << (q - 1 - ctl), 1 << (q - 1 - tgt));
            for i in 0..dim {
                let j = if i & cb != 0 { i ^ tb } else { i };
                m[j][i] = c(1.0);
            }
            m
        }
        Gate::Diagonal(phases) => {
            let mut m = vec![vec![c(0.0); dim]; dim];
            for (i, &p) in phases.iter().enumerate() {
                m[i][i] = Complex64::from_polar(1.0, p);
            }
            m
        }
    }
}

pub fn apply(m: &Matrix, v: &[Complex64]) -> Vec<Complex64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// Runs `gates` on `|0...0>` by dense matrix-vector products.
pub fn run(gates: &[Gate], q: usize) -> Vec<Complex64> {
    let mut v = vec![c(0.0); 1 << q];
    v[0] = c(1.0);
    for g in gates {
        v = apply(&unitary(g, q), &v);
    }
    v
}

pub fn ceil_log2(n: usize) -> usize {
    let mut q = 0;
    while (1 << q) < n {
        q += 1;
    }
    q
}

/// Gate list of the layered ancilla ansatz for `n` variables.
pub fn abe_gates(params: &[f64], n: usize) -> (Vec<Gate>, usize) {
    let q = ceil_log2(n) + 1;
    let mut gates: Vec<Gate> = (0..q).map(Gate::H).collect();
    for layer in params.chunks(q) {
        for k in 0..q - 1 {
            gates.push(Gate::Cnot(k, k + 1));
        }
        for (k, &t) in layer.iter().enumerate() {
            gates.push(Gate::Ry(k, t));
        }
    }
    (gates, q)
}

pub fn adjacency(g: &GridGraph) -> Vec<Vec<f64>> {
    let n = g.num_nodes();
    let mut a = vec![vec![0.0; n]; n];
    for e in g.edges() {
        a[e.u][e.v] = e.w;
        a[e.v][e.u] = e.w;
    }
    a
}

/// `sum_{i<j} A_ij [x_i != x_j]`.
pub fn reference_cut(g: &GridGraph, x: &[bool]) -> f64 {
    let a = adjacency(g);
    let mut total = 0.0;
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            if x[i] != x[j] {
                total += a[i][j];
            }
        }
    }
    total
}

pub fn bits(index: u64, n: usize) -> Vec<bool> {
    (0..n).map(|i| (index >> i) & 1 == 1).collect()
}

/// Sequential exhaustive minimum with the smallest-index tie-break.
pub fn reference_min_cut(g: &GridGraph) -> (f64, u64) {
    let n = g.num_nodes();
    let mut best = (f64::INFINITY, 0);
    for idx in 0..1u64 << n {
        let v = reference_cut(g, &bits(idx, n));
        if v < best.0 {
            best = (v, idx);
        }
    }
    best
}
