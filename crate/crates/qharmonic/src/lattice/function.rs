use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{QError, Result};
use crate::lattice::{LatticeGrid, QContext};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    #[default]
    Signal,
    Frequency,
    Wavelet,
}

/// Even function sampled on the positive lattice window.
///
/// Outside the window the function is extended by two rules: beyond the largest point
/// (`n < n_min`) it is zero, and between the smallest point and the origin (`n > n_max`)
/// it equals `value_at_zero`. Finitely supported functions therefore use
/// `value_at_zero = 0`.
///
/// Besides the values, the offsets `f(q^n) - f(0)` are stored. Samplers that know a
/// function analytically fill them without cancellation, which keeps q-differences
/// accurate near the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeFunction {
    grid: LatticeGrid,
    values: Vec<C64>,
    offsets: Vec<C64>,
    value_at_zero: C64,
    role: Role,
}

impl LatticeFunction {
    pub fn new(grid: LatticeGrid, values: Vec<C64>, value_at_zero: C64) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(QError::GridMismatch(format!(
                "{} values for a grid of {} points",
                values.len(),
                grid.len()
            )));
        }
        let offsets = values.iter().map(|v| v - value_at_zero).collect();
        Ok(LatticeFunction { grid, values, offsets, value_at_zero, role: Role::Signal })
    }

    /// Samples with the limit at zero taken as the value at the innermost point.
    pub fn from_samples(grid: LatticeGrid, values: Vec<C64>) -> Result<Self> {
        let v0 = values.last().copied().unwrap_or_default();
        Self::new(grid, values, v0)
    }

    /// Build from `f(0)` and accurate offsets `f(q^n) - f(0)`.
    pub fn from_offsets(grid: LatticeGrid, value_at_zero: C64, offsets: Vec<C64>) -> Result<Self> {
        if offsets.len() != grid.len() {
            return Err(QError::GridMismatch(format!(
                "{} offsets for a grid of {} points",
                offsets.len(),
                grid.len()
            )));
        }
        let values = offsets.iter().map(|d| value_at_zero + d).collect();
        Ok(LatticeFunction { grid, values, offsets, value_at_zero, role: Role::Signal })
    }

    pub fn from_parts(grid: LatticeGrid, values: Vec<C64>, offsets: Vec<C64>, value_at_zero: C64) -> Result<Self> {
        if values.len() != grid.len() || offsets.len() != grid.len() {
            return Err(QError::GridMismatch("values/offsets length differs from grid".into()));
        }
        Ok(LatticeFunction { grid, values, offsets, value_at_zero, role: Role::Signal })
    }

    pub fn from_exponent_fn(grid: LatticeGrid, value_at_zero: C64, f: impl Fn(i64) -> C64) -> Self {
        let values = grid.exponents().map(f).collect();
        Self::new(grid, values, value_at_zero).expect("length matches grid")
    }

    /// Sample a real function at the lattice points `q^n`.
    pub fn from_real_fn(grid: LatticeGrid, ctx: &QContext, value_at_zero: f64, f: impl Fn(f64) -> f64) -> Self {
        Self::from_exponent_fn(grid, C64::new(value_at_zero, 0.0), |n| C64::new(f(ctx.point(n)), 0.0))
    }

    pub fn zeros(grid: LatticeGrid) -> Self {
        Self::new(grid, vec![C64::default(); grid.len()], C64::default()).expect("length matches grid")
    }

    pub fn constant(grid: LatticeGrid, c: C64) -> Self {
        Self::new(grid, vec![c; grid.len()], c).expect("length matches grid")
    }

    /// Unit mass at a single exponent, zero elsewhere.
    pub fn delta(grid: LatticeGrid, n: i64) -> Result<Self> {
        if !grid.contains(n) {
            return Err(QError::InvalidParameter(format!("exponent {n} outside grid {grid}")));
        }
        Ok(Self::from_exponent_fn(grid, C64::default(), |k| C64::new(if k == n { 1.0 } else { 0.0 }, 0.0)))
    }

    pub fn grid(&self) -> LatticeGrid {
        self.grid
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn offsets(&self) -> &[C64] {
        &self.offsets
    }

    pub fn value_at_zero(&self) -> C64 {
        self.value_at_zero
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn with_role(mut self, role: Role) -> Self {
        self.role = role;
        self
    }

    pub fn with_value_at_zero(&self, v0: C64) -> Self {
        let mut out = Self::new(self.grid, self.values.clone(), v0).expect("same grid");
        out.role = self.role;
        out
    }

    /// Value at `q^n` under the extension rules.
    #[inline]
    pub fn at(&self, n: i64) -> C64 {
        if n < self.grid.n_min {
            C64::default()
        } else if n > self.grid.n_max {
            self.value_at_zero
        } else {
            self.values[(n - self.grid.n_min) as usize]
        }
    }

    /// `f(q^n) - f(0)` under the extension rules.
    #[inline]
    pub fn offset_at(&self, n: i64) -> C64 {
        if n < self.grid.n_min {
            -self.value_at_zero
        } else if n > self.grid.n_max {
            C64::default()
        } else {
            self.offsets[(n - self.grid.n_min) as usize]
        }
    }

    /// Difference `f(q^m) - f(q^n)` computed from offsets.
    #[inline]
    pub fn diff(&self, m: i64, n: i64) -> C64 {
        self.offset_at(m) - self.offset_at(n)
    }

    /// Resample onto another window using the extension rules.
    pub fn restrict(&self, grid: LatticeGrid) -> Self {
        let values = grid.exponents().map(|n| self.at(n)).collect();
        let offsets = grid.exponents().map(|n| self.offset_at(n)).collect();
        LatticeFunction { grid, values, offsets, value_at_zero: self.value_at_zero, role: self.role }
    }

    /// Exponent shift `x -> f(x / q^i)` with a scalar factor; the window moves by `i`.
    pub fn shift_scale(&self, i: i64, factor: f64) -> Self {
        LatticeFunction {
            grid: self.grid.shifted(i),
            values: self.values.iter().map(|v| v * factor).collect(),
            offsets: self.offsets.iter().map(|v| v * factor).collect(),
            value_at_zero: self.value_at_zero * factor,
            role: self.role,
        }
    }

    pub fn scale(&self, c: C64) -> Self {
        LatticeFunction {
            grid: self.grid,
            values: self.values.iter().map(|v| v * c).collect(),
            offsets: self.offsets.iter().map(|v| v * c).collect(),
            value_at_zero: self.value_at_zero * c,
            role: self.role,
        }
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.scale(C64::new(c, 0.0))
    }

    pub fn conj(&self) -> Self {
        LatticeFunction {
            grid: self.grid,
            values: self.values.iter().map(|v| v.conj()).collect(),
            offsets: self.offsets.iter().map(|v| v.conj()).collect(),
            value_at_zero: self.value_at_zero.conj(),
            role: self.role,
        }
    }

    /// `a f + b g` on the union of both windows.
    pub fn lin_comb(a: C64, f: &Self, b: C64, g: &Self) -> Self {
        let grid = f.grid.union(&g.grid);
        let values = grid.exponents().map(|n| a * f.at(n) + b * g.at(n)).collect();
        let offsets = grid.exponents().map(|n| a * f.offset_at(n) + b * g.offset_at(n)).collect();
        LatticeFunction {
            grid,
            values,
            offsets,
            value_at_zero: a * f.value_at_zero + b * g.value_at_zero,
            role: f.role,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::lin_comb(C64::new(1.0, 0.0), self, C64::new(1.0, 0.0), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::lin_comb(C64::new(1.0, 0.0), self, C64::new(-1.0, 0.0), other)
    }

    /// Pointwise product with a real multiplier `m(n)` at exponent `n` and `m0` at zero.
    pub fn multiply(&self, m: impl Fn(i64) -> f64, m0: f64) -> Self {
        let values: Vec<C64> = self.grid.exponents().map(|n| self.at(n) * m(n)).collect();
        let mut out = Self::new(self.grid, values, self.value_at_zero * m0).expect("same grid");
        out.role = self.role;
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(self.value_at_zero.norm(), f64::max)
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| v.im == 0.0) && self.value_at_zero.im == 0.0
    }
}
