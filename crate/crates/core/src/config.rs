use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{DmtError, Result};

/// Antenna counts of an `(m, k, n)` relay channel: source, relay, destination.
///
/// The derived dimensions are the ranks of the three links:
/// `u = min(m, n)` (source-destination), `p = min(m, k)` (source-relay) and
/// `q = min(n, k)` (relay-destination).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawConfig")]
pub struct AntennaConfig {
    m: usize,
    k: usize,
    n: usize,
}

#[derive(Deserialize)]
struct RawConfig {
    m: usize,
    k: usize,
    n: usize,
}

impl TryFrom<RawConfig> for AntennaConfig {
    type Error = DmtError;

    fn try_from(raw: RawConfig) -> Result<Self> {
        AntennaConfig::new(raw.m, raw.k, raw.n)
    }
}

impl AntennaConfig {
    pub fn new(m: usize, k: usize, n: usize) -> Result<Self> {
        if m == 0 || k == 0 || n == 0 {
            return Err(DmtError::Config(format!(
                "antenna counts must be positive, got (m, k, n) = ({m}, {k}, {n})"
            )));
        }
        Ok(Self { m, k, n })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn u(&self) -> usize {
        self.m.min(self.n)
    }

    pub fn p(&self) -> usize {
        self.m.min(self.k)
    }

    pub fn q(&self) -> usize {
        self.n.min(self.k)
    }

    /// Largest multiplexing gain, `min(m, n)`.
    pub fn max_rate(&self) -> f64 {
        self.u() as f64
    }

    /// The `(n, k, m)` channel, i.e. source and destination swapped.
    pub fn reciprocal(&self) -> Self {
        Self {
            m: self.n,
            k: self.k,
            n: self.m,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.m == self.n
    }
}

impl fmt::Display for AntennaConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.m, self.k, self.n)
    }
}
