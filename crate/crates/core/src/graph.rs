//! Weighted grid graphs and the three objective representations built from
//! them: the cut cost, the QUBO matrix and the zero-padded Laplacian.
//!
//! Node indices are row-major, `node(r, c) = r * width + c`. Edges join
//! 4-neighbours only and are stored as `(u, v, w)` with `u < v`, sorted.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng;

const WEIGHT_BITS: u32 = 40;

/// An assignment of every graph node to one of two segments.
///
/// Serialized as a string of `0`/`1` characters, node 0 first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct BitVector(Vec<bool>);

impl BitVector {
    pub fn new(bits: Vec<bool>) -> Self {
        BitVector(bits)
    }

    pub fn zeros(n: usize) -> Self {
        BitVector(vec![false; n])
    }

    /// Bit `i` is bit `i` of `index` (node 0 is the least significant bit).
    pub fn from_index(index: u64, n: usize) -> Self {
        BitVector((0..n).map(|i| (index >> i) & 1 == 1).collect())
    }

    pub fn to_index(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &b)| acc | ((b as u64) << i))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn complement(&self) -> Self {
        BitVector(self.0.iter().map(|b| !b).collect())
    }
}

impl From<Vec<bool>> for BitVector {
    fn from(bits: Vec<bool>) -> Self {
        BitVector(bits)
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("invalid bit {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(BitVector)
    }
}

impl From<BitVector> for String {
    fn from(b: BitVector) -> String {
        b.to_string()
    }
}

impl TryFrom<String> for BitVector {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

/// Weighted 4-neighbourhood grid graph over `width * height` pixels.
#[derive(Debug, Clone, PartialEq)]
pub struct GridGraph {
    width: usize,
    height: usize,
    edges: Vec<Edge>,
}

/// Enumerates the `(u, v)` pairs of a full grid in sorted order.
fn grid_pairs(width: usize, height: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(2 * width * height);
    for r in 0..height {
        for c in 0..width {
            let u = r * width + c;
            if c + 1 < width {
                pairs.push((u, u + 1));
            }
            if r + 1 < height {
                pairs.push((u, u + width));
            }
        }
    }
    pairs
}

impl GridGraph {
    /// Builds a grid graph from an explicit edge list.
    ///
    /// Edges may be given in any order and orientation; they are normalized to
    /// `u < v` and sorted. Non-adjacent pairs, duplicates and non-finite
    /// weights are rejected.
    pub fn from_edges(width: usize, height: usize, edges: Vec<Edge>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidArgument("grid dimensions must be positive".into()));
        }
        let mut edges: Vec<Edge> = edges
            .into_iter()
            .map(|e| if e.u <= e.v { e } else { Edge { u: e.v, v: e.u, w: e.w } })
            .collect();
        let n = width * height;
        for e in &edges {
            if e.v >= n {
                return Err(Error::InvalidArgument(format!("node {} out of range", e.v)));
            }
            let adjacent = (e.v == e.u + 1 && e.u % width + 1 < width) || e.v == e.u + width;
            if !adjacent {
                return Err(Error::InvalidArgument(format!(
                    "edge ({}, {}) does not join grid neighbours",
                    e.u, e.v
                )));
            }
            if !e.w.is_finite() {
                return Err(Error::InvalidArgument(format!("non-finite weight on ({}, {})", e.u, e.v)));
            }
        }
        edges.sort_by_key(|e| (e.u, e.v));
        if edges.windows(2).any(|p| (p[0].u, p[0].v) == (p[1].u, p[1].v)) {
            return Err(Error::InvalidArgument("duplicate edge".into()));
        }
        Ok(GridGraph { width, height, edges })
    }

    /// `side x side` grid with i.i.d. uniform `[-1, 1)` weights on a `2^-39`
    /// grid (see [`rng::unit_dyadic`]).
    pub fn random(side: usize, seed: u64) -> Self {
        Self::random_rect(side, side, seed)
    }

    pub fn random_rect(width: usize, height: usize, seed: u64) -> Self {
        assert!(width >= 1 && height >= 1, "grid dimensions must be positive");
        let mut rng = rng::seeded(seed);
        let edges = grid_pairs(width, height)
            .into_iter()
            .map(|(u, v)| Edge { u, v, w: 2.0 * rng::unit_dyadic(&mut rng, WEIGHT_BITS) - 1.0 })
            .collect();
        GridGraph { width, height, edges }
    }

    /// Builds the similarity graph of a grayscale image.
    ///
    /// `w(i, j) = 1 - 2 |I_i - I_j| / max_intensity`: identical neighbours get
    /// weight 1, maximally different ones -1.
    pub fn from_image(pixels: &[f64], width: usize, height: usize, max_intensity: f64) -> Result<Self> {
        if pixels.len() != width * height {
            return Err(Error::DimensionMismatch { expected: width * height, actual: pixels.len() });
        }
        if width == 0 || height == 0 {
            return Err(Error::InvalidArgument("image dimensions must be positive".into()));
        }
        if !(max_intensity > 0.0) {
            return Err(Error::InvalidArgument("max intensity must be positive".into()));
        }
        let edges = grid_pairs(width, height)
            .into_iter()
            .map(|(u, v)| Edge {
                u,
                v,
                w: 1.0 - 2.0 * (pixels[u] - pixels[v]).abs() / max_intensity,
            })
            .collect();
        Ok(GridGraph { width, height, edges })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn num_nodes(&self) -> usize {
        self.width * self.height
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Symmetric cut value: sum of weights of edges whose endpoints differ.
    pub fn cut_cost(&self, x: &BitVector) -> Result<f64> {
        if x.len() != self.num_nodes() {
            return Err(Error::DimensionMismatch { expected: self.num_nodes(), actual: x.len() });
        }
        Ok(self.cut_cost_unchecked(x.bits()))
    }

    pub(crate) fn cut_cost_unchecked(&self, bits: &[bool]) -> f64 {
        self.edges
            .iter()
            .filter(|e| bits[e.u] != bits[e.v])
            .fold(0.0, |acc, e| acc + e.w)
    }

    /// QUBO with `x^T Q x == cut_cost(x)` for every `x`.
    ///
    /// Each edge contributes `w (x_u + x_v - 2 x_u x_v)`.
    pub fn to_qubo(&self) -> QuboMatrix {
        let mut q = QuboMatrix::zeros(self.num_nodes());
        for e in &self.edges {
            q.add(e.u, e.u, e.w);
            q.add(e.v, e.v, e.w);
            q.add(e.u, e.v, -2.0 * e.w);
        }
        q
    }

    /// Graph Laplacian `D - A`, zero-padded to the next power of two.
    pub fn laplacian(&self) -> LaplacianMatrix {
        self.laplacian_padded(self.num_nodes().next_power_of_two())
    }

    /// Laplacian padded to `dim` rows (`dim >= n`).
    pub fn laplacian_padded(&self, dim: usize) -> LaplacianMatrix {
        assert!(dim >= self.num_nodes());
        let mut m = RealMatrix::zeros(dim);
        for e in &self.edges {
            m[(e.u, e.v)] -= e.w;
            m[(e.v, e.u)] -= e.w;
            m[(e.u, e.u)] += e.w;
            m[(e.v, e.v)] += e.w;
        }
        LaplacianMatrix { n: self.num_nodes(), matrix: m }
    }

    /// Text form: `width height` followed by one `u v w` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.width, self.height);
        for e in &self.edges {
            out.push_str(&format!("{} {} {}\n", e.u, e.v, e.w));
        }
        out
    }

    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty graph file".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad header {header:?}"))))
            .collect::<Result<_>>()?;
        let [width, height] = dims[..] else {
            return Err(Error::Parse(format!("header must be `width height`, got {header:?}")));
        };
        let mut edges = Vec::new();
        for line in lines {
            let tok: Vec<&str> = line.split_whitespace().collect();
            if tok.len() != 3 {
                return Err(Error::Parse(format!("edge line must be `u v w`, got {line:?}")));
            }
            let bad = || Error::Parse(format!("bad edge line {line:?}"));
            edges.push(Edge {
                u: tok[0].parse().map_err(|_| bad())?,
                v: tok[1].parse().map_err(|_| bad())?,
                w: tok[2].parse().map_err(|_| bad())?,
            });
        }
        Self::from_edges(width, height, edges)
    }
}

/// Upper-triangular QUBO matrix; objective `sum_{i <= j} Q[i][j] x_i x_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuboMatrix {
    dim: usize,
    // Row-major full storage; entries below the diagonal stay zero.
    entries: Vec<f64>,
}

impl QuboMatrix {
    pub fn zeros(dim: usize) -> Self {
        QuboMatrix { dim, entries: vec![0.0; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut q = Self::zeros(dim);
        for i in 0..dim {
            q.set(i, i, 1.0);
        }
        q
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry `(i, j)`; reads of the lower triangle are mirrored to `(j, i)`.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        self.entries[i * self.dim + j]
    }

    /// Sets entry `(i, j)`; `(j, i)` addresses the same upper-triangle slot.
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        self.entries[i * self.dim + j] = value;
    }

    pub fn add(&mut self, i: usize, j: usize, value: f64) {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        self.entries[i * self.dim + j] += value;
    }

    /// `x^T Q x` over the upper triangle.
    pub fn value(&self, x: &BitVector) -> Result<f64> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, actual: x.len() });
        }
        Ok(self.value_unchecked(x.bits()))
    }

    pub(crate) fn value_unchecked(&self, bits: &[bool]) -> f64 {
        let mut total = 0.0;
        for i in (0..self.dim).filter(|&i| bits[i]) {
            let row = &self.entries[i * self.dim..(i + 1) * self.dim];
            for j in (i..self.dim).filter(|&j| bits[j]) {
                total += row[j];
            }
        }
        total
    }
}

/// Dense square real matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct RealMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    pub fn zeros(dim: usize) -> Self {
        RealMatrix { dim, data: vec![0.0; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        let mut m = Self::zeros(dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, actual: row.len() });
            }
            m.data[i * dim..(i + 1) * dim].copy_from_slice(row);
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// `alpha * self + beta * other`.
    pub fn combine(&self, alpha: f64, other: &RealMatrix, beta: f64) -> Result<RealMatrix> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, actual: other.dim });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| alpha * a + beta * b).collect();
        Ok(RealMatrix { dim: self.dim, data })
    }
}

impl std::ops::Index<(usize, usize)> for RealMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RealMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.dim + j]
    }
}

/// Zero-padded graph Laplacian. `n` is the number of real (unpadded) nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct LaplacianMatrix {
    n: usize,
    matrix: RealMatrix,
}

impl LaplacianMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn num_nodes(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &RealMatrix {
        &self.matrix
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.matrix[(i, j)]
    }
}
