//! Binary image segmentation as a graph min-cut, solved with qubit-efficient
//! variational quantum circuits on an exact statevector simulator.
//!
//! The pipeline: build a weighted grid graph ([`graph`]), encode the cut
//! problem with one of three encodings ([`encodings`]), tune the circuit
//! parameters with a derivative-free optimizer ([`optimize`]) and decode the
//! best measurement into a mask ([`solve`]). [`oracle`] supplies exact
//! reference values by exhaustive search; [`harness`] holds the benchmark
//! sweep, resource estimates and file formats.

pub mod encodings;
pub mod error;
pub mod graph;
pub mod harness;
pub mod optimize;
pub mod oracle;
pub mod rng;
pub mod sim;
pub mod solve;

pub use error::{Error, Result};
pub use graph::{BitVector, Edge, GridGraph, LaplacianMatrix, QuboMatrix, RealMatrix};
pub use optimize::{OptimizerConfig, OptimizerKind, OptimizerResult};
pub use oracle::{brute_force_min_cut, brute_force_qubo, ExactSolution};
pub use sim::{ShotHistogram, Statevector};
pub use solve::{solve, Method, Solution, SolveConfig};
