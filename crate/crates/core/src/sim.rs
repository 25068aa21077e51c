//! Dense statevector simulation.
//!
//! Bit ordering: qubit 0 is the most significant bit of a basis index, qubit
//! `q - 1` the least significant. For the ancilla encodings this puts the
//! register on qubits `0..r` and the ancilla on qubit `r`, so a basis index is
//! `2 * register + ancilla`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::RealMatrix;
use crate::rng;

pub const MAX_QUBITS: usize = 24;
pub const MAX_OBSERVABLE_QUBITS: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl Statevector {
    /// `|0...0>` on `num_qubits` qubits.
    pub fn new(num_qubits: usize) -> Result<Self> {
        if !(1..=MAX_QUBITS).contains(&num_qubits) {
            return Err(Error::QubitRange(num_qubits, MAX_QUBITS));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << num_qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(Statevector { num_qubits, amps })
    }

    /// Wraps raw amplitudes. The caller is responsible for normalization.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let num_qubits = amps.len().trailing_zeros() as usize;
        if !amps.len().is_power_of_two() || !(1..=MAX_QUBITS).contains(&num_qubits) {
            return Err(Error::InvalidArgument(format!(
                "amplitude count {} is not 2^q for 1 <= q <= {MAX_QUBITS}",
                amps.len()
            )));
        }
        Ok(Statevector { num_qubits, amps })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    fn mask(&self, qubit: usize) -> Result<usize> {
        if qubit >= self.num_qubits {
            return Err(Error::QubitIndex { index: qubit, num_qubits: self.num_qubits });
        }
        Ok(1 << (self.num_qubits - 1 - qubit))
    }

    /// Applies a real 2x2 matrix `[[a, b], [c, d]]` to `qubit`.
    fn apply_real_1q(&mut self, qubit: usize, [a, b, c, d]: [f64; 4]) -> Result<()> {
        let mask = self.mask(qubit)?;
        for i in (0..self.amps.len()).filter(|i| i & mask == 0) {
            let (lo, hi) = (self.amps[i], self.amps[i | mask]);
            self.amps[i] = lo * a + hi * b;
            self.amps[i | mask] = lo * c + hi * d;
        }
        Ok(())
    }

    pub fn h(&mut self, qubit: usize) -> Result<()> {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        self.apply_real_1q(qubit, [s, s, s, -s])
    }

    pub fn ry(&mut self, qubit: usize, theta: f64) -> Result<()> {
        let (sin, cos) = (theta / 2.0).sin_cos();
        self.apply_real_1q(qubit, [cos, -sin, sin, cos])
    }

    pub fn cnot(&mut self, control: usize, target: usize) -> Result<()> {
        if control == target {
            return Err(Error::SameQubit(control));
        }
        let cmask = self.mask(control)?;
        let tmask = self.mask(target)?;
        for i in (0..self.amps.len()).filter(|i| i & cmask != 0 && i & tmask == 0) {
            self.amps.swap(i, i | tmask);
        }
        Ok(())
    }

    /// Multiplies amplitude `k` by `exp(i * phases[k])`.
    pub fn diagonal(&mut self, phases: &[f64]) -> Result<()> {
        if phases.len() != self.amps.len() {
            return Err(Error::DimensionMismatch { expected: self.amps.len(), actual: phases.len() });
        }
        for (amp, &phi) in self.amps.iter_mut().zip(phases) {
            *amp *= Complex64::from_polar(1.0, phi);
        }
        Ok(())
    }

    /// `<psi| m |psi>` for a real symmetric `m`.
    pub fn expectation(&self, m: &RealMatrix) -> Result<f64> {
        if m.dim() != self.amps.len() {
            return Err(Error::DimensionMismatch { expected: self.amps.len(), actual: m.dim() });
        }
        if self.num_qubits > MAX_OBSERVABLE_QUBITS {
            return Err(Error::QubitRange(self.num_qubits, MAX_OBSERVABLE_QUBITS));
        }
        let mut total = Complex64::new(0.0, 0.0);
        for (i, bra) in self.amps.iter().enumerate() {
            let row_dot: Complex64 = m.row(i).iter().zip(&self.amps).map(|(&mij, ket)| ket * mij).sum();
            total += bra.conj() * row_dot;
        }
        // Imaginary part is rounding residue for symmetric m.
        Ok(total.re)
    }

    /// Draws `shots` i.i.d. measurements in the computational basis by
    /// inverse-CDF lookup over the cumulative probability array.
    pub fn sample(&self, shots: u64, seed: u64) -> ShotHistogram {
        let mut cdf = Vec::with_capacity(self.amps.len());
        let mut acc = 0.0;
        for a in &self.amps {
            acc += a.norm_sqr();
            cdf.push(acc);
        }
        let total = acc;
        let last = cdf.len() - 1;
        let mut counts = vec![0u64; self.amps.len()];
        let mut rng = rng::seeded(seed);
        for _ in 0..shots {
            let u = rng::unit_f64(&mut rng) * total;
            let k = cdf.partition_point(|&c| c <= u).min(last);
            counts[k] += 1;
        }
        ShotHistogram { num_qubits: self.num_qubits, counts, shots }
    }
}

/// Counts of observed basis states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShotHistogram {
    num_qubits: usize,
    counts: Vec<u64>,
    shots: u64,
}

impl ShotHistogram {
    /// Builds a histogram from `(basis index, count)` pairs.
    pub fn from_counts(num_qubits: usize, pairs: &[(usize, u64)]) -> Result<Self> {
        if !(1..=MAX_QUBITS).contains(&num_qubits) {
            return Err(Error::QubitRange(num_qubits, MAX_QUBITS));
        }
        let mut counts = vec![0u64; 1 << num_qubits];
        for &(idx, c) in pairs {
            if idx >= counts.len() {
                return Err(Error::InvalidArgument(format!("basis index {idx} >= 2^{num_qubits}")));
            }
            counts[idx] += c;
        }
        let shots = counts.iter().sum();
        Ok(ShotHistogram { num_qubits, counts, shots })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    pub fn count(&self, index: usize) -> u64 {
        self.counts.get(index).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Non-zero entries in ascending basis order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.counts.iter().copied().enumerate().filter(|&(_, c)| c > 0)
    }
}
