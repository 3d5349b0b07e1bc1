use serde::{Deserialize, Serialize};

use crate::error::{QError, Result};
use crate::harmonic::fourier::bessel_fourier_on;
use crate::lattice::{integrate_power, lp_norm, LatticeFunction, LatticeGrid, QContext, Role};
use crate::special::gaussian_wavelet;

/// Extra exponents past the innermost sample on which the wavelet spectrum is kept.
const SPECTRAL_EXTENSION: i64 = 30;

/// Which transform the admissibility constant refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WaveletKind {
    /// `C_g` with respect to `F_{alpha,q}`; drives `Psi`.
    Bessel,
    /// `C_g^c` with respect to `F_q`; drives the classical transform `Phi`.
    Cosine,
}

impl WaveletKind {
    /// The context the transform runs in: `alpha` itself, or `-1/2` for the cosine kind.
    pub fn context(&self, ctx: &QContext) -> QContext {
        match self {
            WaveletKind::Bessel => *ctx,
            WaveletKind::Cosine => ctx.cosine(),
        }
    }
}

/// An admissible wavelet with its spectrum and admissibility constant.
#[derive(Debug, Clone)]
pub struct WaveletDescriptor {
    pub g: LatticeFunction,
    pub c_g: f64,
    pub kind: WaveletKind,
    /// `F(g)` on `[n_min, n_max + 30]` of the wavelet window.
    pub spectrum: LatticeFunction,
    pub id: String,
    /// How `c_g` was obtained.
    pub provenance: String,
}

impl WaveletDescriptor {
    pub fn new(g: LatticeFunction, kind: WaveletKind, id: &str, ctx: &QContext) -> Result<Self> {
        let ectx = kind.context(ctx);
        let spectrum = wavelet_spectrum(&g, &ectx)?;
        let c_g = admissibility_from_spectrum(&spectrum, &ectx)?;
        let sg = spectrum.grid();
        Ok(WaveletDescriptor {
            g: g.with_role(Role::Wavelet),
            c_g,
            kind,
            spectrum,
            id: id.to_string(),
            provenance: format!("Jackson sum of |F(g)(a)|^2 d_q a / a over exponents {sg}"),
        })
    }

    /// The Gaussian example `g = Delta_{alpha,q} G` sampled on `grid`.
    pub fn gaussian(grid: LatticeGrid, ctx: &QContext) -> Result<Self> {
        Self::new(gaussian_wavelet(grid, ctx)?, WaveletKind::Bessel, "gaussian", ctx)
    }

    pub fn context(&self, ctx: &QContext) -> QContext {
        self.kind.context(ctx)
    }
}

fn wavelet_spectrum(g: &LatticeFunction, ectx: &QContext) -> Result<LatticeFunction> {
    let grid = g.grid();
    let out = LatticeGrid::new(grid.n_min, grid.n_max + SPECTRAL_EXTENSION)?;
    bessel_fourier_on(g, out, ectx)
}

fn admissibility_from_spectrum(spec: &LatticeFunction, ectx: &QContext) -> Result<f64> {
    let peak = spec.values().iter().map(|v| v.norm_sqr()).fold(0.0, f64::max);
    if !(peak > 0.0) {
        return Err(QError::NotAdmissible("F(g) vanishes identically, C_g = 0".into()));
    }
    let v0 = spec.value_at_zero().norm_sqr();
    if v0 > 1e-12 * peak {
        return Err(QError::NotAdmissible(format!(
            "F(g)(0) = {:.3e} is not zero, so the integral over d_q a / a diverges",
            spec.value_at_zero().norm()
        )));
    }
    let s: f64 = spec.values().iter().map(|v| v.norm_sqr()).sum();
    let c = (1.0 - ectx.q()) * s;
    if !c.is_finite() {
        return Err(QError::NonConvergence("admissibility sum is not finite".into()));
    }
    Ok(c)
}

/// `C_g = int_0^inf |F(g)(a)|^2 d_q a / a` with respect to `F_{alpha,q}` (Bessel kind) or `F_q`.
pub fn admissibility_constant(g: &LatticeFunction, kind: WaveletKind, ctx: &QContext) -> Result<f64> {
    let ectx = kind.context(ctx);
    admissibility_from_spectrum(&wavelet_spectrum(g, &ectx)?, &ectx)
}

/// `|int g x^{2a+1} d_q x| <= tol ||g||_{1,alpha,q}`, i.e. `F(g)(0)` vanishes numerically.
pub fn check_admissibility_zero_mean(g: &LatticeFunction, ctx: &QContext) -> bool {
    check_zero_mean_tol(g, 1e-9, ctx)
}

pub fn check_zero_mean_tol(g: &LatticeFunction, tol: f64, ctx: &QContext) -> bool {
    let (Ok(m), Ok(n)) = (integrate_power(g, 2.0 * ctx.alpha() + 1.0, ctx), lp_norm(g, 1.0, ctx)) else {
        return false;
    };
    m.norm() <= tol * n
}

/// `C_g` of a wavelet built as `Delta_{alpha,q} f`: `q^{-4a-2} int a^3 |F(f)(a)|^2 d_q a`.
pub fn admissibility_of_laplacian(f: &LatticeFunction, ctx: &QContext) -> Result<f64> {
    let q = ctx.q();
    let grid = f.grid();
    let spec = bessel_fourier_on(f, LatticeGrid::new(grid.n_min, grid.n_max + SPECTRAL_EXTENSION)?, ctx)?;
    let mut s = 0.0;
    for n in spec.grid().exponents() {
        s += spec.at(n).norm_sqr() * q.powi(4 * n as i32);
    }
    let f0 = spec.value_at_zero().norm_sqr();
    s += f0 * q.powi(4 * (spec.grid().n_max + 1) as i32) / (1.0 - q.powi(4));
    Ok(q.powf(-(4.0 * ctx.alpha() + 2.0)) * (1.0 - q) * s)
}
