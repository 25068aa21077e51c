use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Qaoa,
    Pge,
    Abe,
    Ace,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [Algorithm::Qaoa, Algorithm::Pge, Algorithm::Abe, Algorithm::Ace];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Qaoa => "qaoa",
            Algorithm::Pge => "pge",
            Algorithm::Abe => "abe",
            Algorithm::Ace => "ace",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "qaoa" => Ok(Algorithm::Qaoa),
            "pge" => Ok(Algorithm::Pge),
            "abe" => Ok(Algorithm::Abe),
            "ace" => Ok(Algorithm::Ace),
            other => Err(Error::InvalidArgument(format!("unknown method {other:?}"))),
        }
    }
}

/// Circuit resources for `n` variables (rounded up to a power of two) and `L`
/// layers. QAOA figures are leading-order terms only and flagged approximate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResourceEstimate {
    pub method: Algorithm,
    pub n: u64,
    pub layers: u64,
    pub qubits: u64,
    pub entanglement_gates: u64,
    pub parametric_gates: u64,
    pub depth: u64,
    pub approximate: bool,
}

pub fn resource_estimate(method: Algorithm, n: u64, layers: u64) -> Result<ResourceEstimate> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 variables, got {n}")));
    }
    if layers == 0 {
        return Err(Error::InvalidArgument("layers must be at least 1".into()));
    }
    let n = n
        .checked_next_power_of_two()
        .filter(|&p| p <= 1 << 31)
        .ok_or_else(|| Error::InvalidArgument(format!("{n} variables is too many to estimate")))?;
    let log = n.trailing_zeros() as u64;
    let overflow = || Error::InvalidArgument(format!("resource counts for n={n}, L={layers} overflow"));
    let mul = |a: u64, b: u64| a.checked_mul(b).ok_or_else(overflow);
    let (qubits, entanglement_gates, parametric_gates, depth) = match method {
        Algorithm::Qaoa => (n, n * n, mul(layers, n)?, mul(layers, n * n)?),
        Algorithm::Pge => (log, n - 1, n, n),
        Algorithm::Abe | Algorithm::Ace => {
            (log + 1, mul(layers, log)?, mul(layers, log + 1)?, mul(layers, log + 1)?)
        }
    };
    Ok(ResourceEstimate {
        method,
        n,
        layers,
        qubits,
        entanglement_gates,
        parametric_gates,
        depth,
        approximate: method == Algorithm::Qaoa,
    })
}
