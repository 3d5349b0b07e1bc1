use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{QError, Result};
use crate::lattice::io::fmt17;
use crate::lattice::{LatticeFunction, LatticeGrid, QContext};
use crate::wavelet::WaveletKind;

/// Scale, position and spectral windows of a time-scale plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneGrids {
    /// Exponents `i` of the scales `a = q^i`.
    pub scales: LatticeGrid,
    /// Exponents `k` of the positions `b = q^k`; `b = 0` is always included.
    pub positions: LatticeGrid,
    /// Exponents `m` of the frequencies `q^m` used by the spectral evaluation.
    pub spectral: LatticeGrid,
}

/// Wavelet coefficients on `scales x (positions ∪ {0})`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeScalePlane {
    pub grids: PlaneGrids,
    pub q: f64,
    /// Order of the transform (`-1/2` for the classical transform).
    pub alpha: f64,
    pub kind: WaveletKind,
    pub wavelet_id: String,
    coeffs: Vec<C64>,
    at_origin: Vec<C64>,
}

impl TimeScalePlane {
    pub fn zeros(grids: PlaneGrids, ctx: &QContext, kind: WaveletKind, wavelet_id: &str) -> Self {
        let ectx = kind.context(ctx);
        let ns = grids.scales.len();
        TimeScalePlane {
            grids,
            q: ectx.q(),
            alpha: ectx.alpha(),
            kind,
            wavelet_id: wavelet_id.to_string(),
            coeffs: vec![C64::default(); ns * grids.positions.len()],
            at_origin: vec![C64::default(); ns],
        }
    }

    /// Build from rows: one function of `b` per scale, in scale order.
    pub fn from_rows(
        grids: PlaneGrids,
        rows: &[LatticeFunction],
        ctx: &QContext,
        kind: WaveletKind,
        wavelet_id: &str,
    ) -> Result<Self> {
        if rows.len() != grids.scales.len() {
            return Err(QError::GridMismatch(format!("{} rows for {} scales", rows.len(), grids.scales.len())));
        }
        let mut p = Self::zeros(grids, ctx, kind, wavelet_id);
        for (r, row) in rows.iter().enumerate() {
            for (c, k) in grids.positions.exponents().enumerate() {
                p.coeffs[r * grids.positions.len() + c] = row.at(k);
            }
            p.at_origin[r] = row.value_at_zero();
        }
        Ok(p)
    }

    pub fn n_scales(&self) -> usize {
        self.grids.scales.len()
    }

    pub fn n_positions(&self) -> usize {
        self.grids.positions.len()
    }

    /// `Psi(q^i, q^k)`.
    pub fn get(&self, i: i64, k: i64) -> C64 {
        let r = self.grids.scales.index(i).expect("scale in grid");
        let c = self.grids.positions.index(k).expect("position in grid");
        self.coeffs[r * self.n_positions() + c]
    }

    /// `Psi(q^i, 0)`.
    pub fn at_origin(&self, i: i64) -> C64 {
        self.at_origin[self.grids.scales.index(i).expect("scale in grid")]
    }

    pub(crate) fn set_row(&mut self, r: usize, values: &[C64], origin: C64) {
        let n = self.n_positions();
        self.coeffs[r * n..(r + 1) * n].copy_from_slice(values);
        self.at_origin[r] = origin;
    }

    pub(crate) fn row_slice(&self, r: usize) -> &[C64] {
        let n = self.n_positions();
        &self.coeffs[r * n..(r + 1) * n]
    }

    pub(crate) fn origin_by_index(&self, r: usize) -> C64 {
        self.at_origin[r]
    }

    /// Scale row `b -> Psi(q^i, b)` as a lattice function of the position.
    pub fn row(&self, i: i64) -> LatticeFunction {
        let r = self.grids.scales.index(i).expect("scale in grid");
        LatticeFunction::new(self.grids.positions, self.row_slice(r).to_vec(), self.at_origin[r]).expect("row length")
    }

    pub fn rows(&self) -> Vec<LatticeFunction> {
        self.grids.scales.exponents().map(|i| self.row(i)).collect()
    }

    pub fn sup_norm(&self) -> f64 {
        self.coeffs.iter().chain(self.at_origin.iter()).map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Apply `h(i, k, value)` to every entry (`k = None` at the origin).
    pub fn map(&self, h: impl Fn(i64, Option<i64>, C64) -> C64) -> Self {
        let mut out = self.clone();
        let np = self.n_positions();
        for (r, i) in self.grids.scales.exponents().enumerate() {
            for (c, k) in self.grids.positions.exponents().enumerate() {
                out.coeffs[r * np + c] = h(i, Some(k), self.coeffs[r * np + c]);
            }
            out.at_origin[r] = h(i, None, self.at_origin[r]);
        }
        out
    }

    pub fn lin_comb(&self, a: C64, other: &Self, b: C64) -> Result<Self> {
        if self.grids != other.grids {
            return Err(QError::GridMismatch("planes on different grids".into()));
        }
        let mut out = self.clone();
        for (o, (x, y)) in out.coeffs.iter_mut().zip(self.coeffs.iter().zip(&other.coeffs)) {
            *o = a * x + b * y;
        }
        for (o, (x, y)) in out.at_origin.iter_mut().zip(self.at_origin.iter().zip(&other.at_origin)) {
            *o = a * x + b * y;
        }
        Ok(out)
    }

    /// Largest entrywise difference relative to the larger sup-norm.
    pub fn rel_distance(&self, other: &Self) -> Result<f64> {
        let d = self.lin_comb(C64::new(1.0, 0.0), other, C64::new(-1.0, 0.0))?;
        let s = self.sup_norm().max(other.sup_norm());
        Ok(if s == 0.0 { d.sup_norm() } else { d.sup_norm() / s })
    }

    /// CSV `a,b,re,im`; the origin column is written with `b = 0`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(vec![]);
        w.write_record(["a", "b", "re", "im"]).map_err(|e| QError::Io(e.to_string()))?;
        let np = self.n_positions();
        for (r, i) in self.grids.scales.exponents().enumerate() {
            let a = fmt17(self.q.powi(i as i32));
            for (c, k) in self.grids.positions.exponents().enumerate() {
                let v = self.coeffs[r * np + c];
                w.write_record([a.clone(), fmt17(self.q.powi(k as i32)), fmt17(v.re), fmt17(v.im)])
                    .map_err(|e| QError::Io(e.to_string()))?;
            }
            let v = self.at_origin[r];
            w.write_record([a, fmt17(0.0), fmt17(v.re), fmt17(v.im)]).map_err(|e| QError::Io(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| QError::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| QError::Io(e.to_string()))
    }

    /// Magnitude table `a,b,abs` for plotting.
    pub fn magnitude_csv(&self) -> String {
        let mut s = String::from("a,b,abs\n");
        for i in self.grids.scales.exponents() {
            for k in self.grids.positions.exponents() {
                s += &format!("{},{},{}\n", fmt17(self.q.powi(i as i32)), fmt17(self.q.powi(k as i32)), fmt17(self.get(i, k).norm()));
            }
            s += &format!("{},{},{}\n", fmt17(self.q.powi(i as i32)), fmt17(0.0), fmt17(self.at_origin(i).norm()));
        }
        s
    }

    pub fn to_json(&self) -> Result<String> {
        let env = PlaneEnvelope {
            q: self.q,
            alpha: self.alpha,
            kind: self.kind,
            wavelet_id: self.wavelet_id.clone(),
            scales: GridStrings::from(self.grids.scales),
            positions: GridStrings::from(self.grids.positions),
            spectral: GridStrings::from(self.grids.spectral),
            coeffs: self.coeffs.iter().map(|v| [v.re, v.im]).collect(),
            at_origin: self.at_origin.iter().map(|v| [v.re, v.im]).collect(),
        };
        serde_json::to_string_pretty(&env).map_err(|e| QError::Io(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let env: PlaneEnvelope = serde_json::from_str(text).map_err(|e| QError::Parse(e.to_string()))?;
        let grids = PlaneGrids {
            scales: env.scales.grid()?,
            positions: env.positions.grid()?,
            spectral: env.spectral.grid()?,
        };
        if env.coeffs.len() != grids.scales.len() * grids.positions.len() || env.at_origin.len() != grids.scales.len() {
            return Err(QError::GridMismatch("plane coefficient count does not match its grids".into()));
        }
        Ok(TimeScalePlane {
            grids,
            q: env.q,
            alpha: env.alpha,
            kind: env.kind,
            wavelet_id: env.wavelet_id,
            coeffs: env.coeffs.iter().map(|v| C64::new(v[0], v[1])).collect(),
            at_origin: env.at_origin.iter().map(|v| C64::new(v[0], v[1])).collect(),
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct GridStrings {
    n_min: String,
    n_max: String,
}

impl From<LatticeGrid> for GridStrings {
    fn from(g: LatticeGrid) -> Self {
        GridStrings { n_min: g.n_min.to_string(), n_max: g.n_max.to_string() }
    }
}

impl GridStrings {
    fn grid(&self) -> Result<LatticeGrid> {
        let p = |s: &str| s.parse::<i64>().map_err(|_| QError::Parse(format!("bad exponent '{s}'")));
        LatticeGrid::new(p(&self.n_min)?, p(&self.n_max)?)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct PlaneEnvelope {
    q: f64,
    alpha: f64,
    kind: WaveletKind,
    wavelet_id: String,
    scales: GridStrings,
    positions: GridStrings,
    spectral: GridStrings,
    coeffs: Vec<[f64; 2]>,
    at_origin: Vec<[f64; 2]>,
}
