use num_complex::Complex64 as C64;

use crate::error::{QError, Result};
use crate::fractional::operators::{k1, k2, riemann_liouville, riemann_liouville_inverse, weyl, weyl_inverse_on};
use crate::lattice::{LatticeFunction, LatticeGrid, QContext};
use crate::wavelet::{
    auto_grids, wavelet_reconstruct, wavelet_transform_on, PlaneGrids, TimeScalePlane, WaveletDescriptor, WaveletKind,
};

fn require_bessel(w: &WaveletDescriptor) -> Result<()> {
    if w.kind != WaveletKind::Bessel {
        return Err(QError::InvalidParameter("expected a Bessel-kind wavelet".into()));
    }
    Ok(())
}

/// `W_{alpha,q}(g)` as a cosine-kind wavelet.
pub fn weyl_wavelet(w: &WaveletDescriptor, ctx: &QContext) -> Result<WaveletDescriptor> {
    require_bessel(w)?;
    WaveletDescriptor::new(weyl(&w.g, ctx)?, WaveletKind::Cosine, &format!("weyl({})", w.id), ctx)
}

/// `K_{alpha,q,1}(W_{alpha,q}(g))` as a cosine-kind wavelet.
pub fn k1_weyl_wavelet(w: &WaveletDescriptor, ctx: &QContext) -> Result<WaveletDescriptor> {
    require_bessel(w)?;
    let h = k1(&weyl(&w.g, ctx)?, ctx)?;
    WaveletDescriptor::new(h, WaveletKind::Cosine, &format!("k1(weyl({}))", w.id), ctx)
}

/// `K_{alpha,q,2}(g)` as a Bessel-kind wavelet.
pub fn k2_wavelet(w: &WaveletDescriptor, ctx: &QContext) -> Result<WaveletDescriptor> {
    require_bessel(w)?;
    WaveletDescriptor::new(k2(&w.g, ctx)?, WaveletKind::Bessel, &format!("k2({})", w.id), ctx)
}

/// One scale row `b -> Phi_{q,h}(f)(q^i, b)` on `positions`, with the frequency window used.
fn classical_row(
    f: &LatticeFunction,
    h: &WaveletDescriptor,
    i: i64,
    positions: LatticeGrid,
    ctx: &QContext,
) -> Result<(LatticeFunction, LatticeGrid)> {
    let spectral = auto_grids(f, h, ctx)?.spectral;
    let grids = PlaneGrids { scales: LatticeGrid::new(i, i)?, positions, spectral };
    Ok((wavelet_transform_on(f, h, grids, ctx)?.row(i), spectral))
}

/// Which identity expresses `Psi_{q,g}^alpha(f)(a, .)` through a classical transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsiFromPhi {
    /// `W^{-1}[Phi_{q,W g}(W f)(a, .)]`
    Weyl,
    /// `R[Phi_{q,W g}(R^{-1} f)(a, .)]`
    RiemannLiouville,
    /// `a^{-(2a+1)} R[Phi_{q,K1 W g}(W f)(a, .)]`
    K1,
}

/// The row `b -> Psi_{q,g}^alpha(f)(q^i, b)` on `positions`, computed from the classical
/// transform by one of the three identities.
pub fn wavelet_relation_psi_from_phi(
    f: &LatticeFunction,
    w: &WaveletDescriptor,
    i: i64,
    positions: LatticeGrid,
    form: PsiFromPhi,
    ctx: &QContext,
) -> Result<LatticeFunction> {
    match form {
        PsiFromPhi::Weyl => {
            let (row, spectral) = classical_row(&weyl(f, ctx)?, &weyl_wavelet(w, ctx)?, i, positions, ctx)?;
            // the row's spectrum sits on the frequencies of the classical plane
            weyl_inverse_on(&row, spectral.union(&positions), ctx)
        }
        PsiFromPhi::RiemannLiouville => {
            let (row, _) = classical_row(&riemann_liouville_inverse(f, ctx)?, &weyl_wavelet(w, ctx)?, i, positions, ctx)?;
            riemann_liouville(&row, ctx)
        }
        PsiFromPhi::K1 => {
            let (row, _) = classical_row(&weyl(f, ctx)?, &k1_weyl_wavelet(w, ctx)?, i, positions, ctx)?;
            let s = ctx.q().powf(-(i as f64) * (2.0 * ctx.alpha() + 1.0));
            Ok(riemann_liouville(&row, ctx)?.scale_real(s))
        }
    }
}

/// Apply `op` to every scale row and multiply row `i` by `q^{-i(2a+1)}`.
fn transform_rows(
    plane: &TimeScalePlane,
    op: impl Fn(&LatticeFunction) -> Result<LatticeFunction>,
    grids: PlaneGrids,
    kind: WaveletKind,
    id: &str,
    ctx: &QContext,
) -> Result<TimeScalePlane> {
    let e = 2.0 * ctx.alpha() + 1.0;
    let rows = plane
        .grids
        .scales
        .exponents()
        .map(|i| Ok(op(&plane.row(i))?.scale(C64::new(ctx.q().powf(-(i as f64) * e), 0.0))))
        .collect::<Result<Vec<_>>>()?;
    TimeScalePlane::from_rows(grids, &rows, ctx, kind, id)
}

/// Spectral window for reconstructing from a plane whose frequencies were sized for
/// another transform: a few exponents outward, more toward the origin.
fn widened(s: LatticeGrid) -> Result<LatticeGrid> {
    LatticeGrid::new(s.n_min - 2, s.n_max + 10)
}

/// `W_{alpha,q}^{-1}(f)` on the window of `f`, recovered from the classical transform:
/// the plane `a^{-(2a+1)} R[Phi_{q,K1 W g}(f)(a, .)](b)` is reconstructed with `Psi_{q,g}`.
pub fn wavelet_inversion_weyl(
    f: &LatticeFunction,
    w: &WaveletDescriptor,
    grids: Option<PlaneGrids>,
    ctx: &QContext,
) -> Result<LatticeFunction> {
    let h = k1_weyl_wavelet(w, ctx)?;
    let grids = match grids {
        Some(g) => g,
        None => auto_grids(f, &h, ctx)?,
    };
    let phi = wavelet_transform_on(f, &h, grids, ctx)?;
    let out_grids = PlaneGrids { spectral: widened(grids.spectral)?, ..grids };
    let p = transform_rows(&phi, |r| riemann_liouville(r, ctx), out_grids, WaveletKind::Bessel, &w.id, ctx)?;
    wavelet_reconstruct(&p, w, f.grid(), ctx)
}

/// `R_{alpha,q}^{-1}(f)` on the window of `f`: the plane
/// `a^{-(2a+1)} W[Psi_{q,K2 g}(f)(a, .)](b)` is reconstructed with the classical
/// transform of the wavelet `W g`.
pub fn wavelet_inversion_rl(
    f: &LatticeFunction,
    w: &WaveletDescriptor,
    grids: Option<PlaneGrids>,
    ctx: &QContext,
) -> Result<LatticeFunction> {
    let h = k2_wavelet(w, ctx)?;
    let grids = match grids {
        Some(g) => g,
        None => auto_grids(f, &h, ctx)?,
    };
    let psi = wavelet_transform_on(f, &h, grids, ctx)?;
    let wg = weyl_wavelet(w, ctx)?;
    let out_grids = PlaneGrids { spectral: widened(grids.spectral)?, ..grids };
    let p = transform_rows(&psi, |r| weyl(r, ctx), out_grids, WaveletKind::Cosine, &wg.id, ctx)?;
    wavelet_reconstruct(&p, &wg, f.grid(), ctx)
}
