use serde::{Deserialize, Serialize};

use crate::error::{QError, Result};

/// Finite window of exponents `n_min..=n_max`; the point for exponent `n` is `q^n`,
/// so `n_min` carries the largest point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeGrid {
    pub n_min: i64,
    pub n_max: i64,
}

impl LatticeGrid {
    pub fn new(n_min: i64, n_max: i64) -> Result<Self> {
        if n_min > n_max {
            return Err(QError::InvalidParameter(format!("empty grid: n_min {n_min} > n_max {n_max}")));
        }
        Ok(LatticeGrid { n_min, n_max })
    }

    pub fn len(&self) -> usize {
        (self.n_max - self.n_min + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, n: i64) -> bool {
        n >= self.n_min && n <= self.n_max
    }

    pub fn exponents(&self) -> impl Iterator<Item = i64> + Clone {
        self.n_min..=self.n_max
    }

    pub fn index(&self, n: i64) -> Option<usize> {
        self.contains(n).then(|| (n - self.n_min) as usize)
    }

    /// Exponent range moved by `i` (the grid of `x -> f(x/a)` for `a = q^i`).
    pub fn shifted(&self, i: i64) -> Self {
        LatticeGrid { n_min: self.n_min + i, n_max: self.n_max + i }
    }

    pub fn union(&self, other: &Self) -> Self {
        LatticeGrid { n_min: self.n_min.min(other.n_min), n_max: self.n_max.max(other.n_max) }
    }

    /// Interior exponents, dropping `k` points at each edge.
    pub fn interior(&self, k: i64) -> impl Iterator<Item = i64> + Clone {
        (self.n_min + k)..=(self.n_max - k)
    }
}

impl std::fmt::Display for LatticeGrid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}]", self.n_min, self.n_max)
    }
}
