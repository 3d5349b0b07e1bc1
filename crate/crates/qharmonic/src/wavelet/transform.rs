use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::error::{QError, Result};
use crate::harmonic::fourier::bessel_fourier_with;
use crate::lattice::{LatticeFunction, LatticeGrid, QContext};
use crate::special::BesselJ;
use crate::wavelet::{PlaneGrids, TimeScalePlane, WaveletDescriptor};

/// Relative energy below which a frequency or scale is dropped from automatic grids.
const ENERGY_EPS: f64 = 1e-14;
/// `|j(q^k)|` below this counts as zero when sizing the position window.
const J_EPS: f64 = 1e-12;

/// Exponent range where `|h(q^n)|^2 q^{n wp}` exceeds `eps` times its peak; the constant
/// extension toward the origin is followed while it still matters.
fn significant_range(h: &LatticeFunction, wp: f64, q: f64, eps: f64) -> Option<(i64, i64)> {
    let dens = |n: i64| h.at(n).norm_sqr() * q.powf(n as f64 * wp);
    let peak = h.grid().exponents().map(dens).fold(0.0, f64::max);
    if !(peak > 0.0) {
        return None;
    }
    let sig: Vec<i64> = h.grid().exponents().filter(|&n| dens(n) > eps * peak).collect();
    let lo = *sig.first()?;
    let mut hi = *sig.last()?;
    let h0 = h.value_at_zero().norm_sqr();
    if h0 > 0.0 && wp > 0.0 && h0 * q.powf(h.grid().n_max as f64 * wp) > eps * peak {
        let n = ((eps * peak / h0).ln() / (wp * q.ln())).ceil() as i64;
        hi = hi.max(n);
    }
    Some((lo, hi))
}

/// Frequencies whose term `|F(f)(q^m)| q^{m wp}` can reach `1e-13` of the largest plane
/// entry. The scale factor `sqrt(a)` and `|F(g)(a q^m)| <= max` give the bound
/// `|F(f)(q^m)| q^{m (wp - 1/2)}` up to a constant.
fn contributing_range(ff: &LatticeFunction, wp: f64, q: f64) -> Option<(i64, i64)> {
    let e = wp - 0.5;
    let s = |m: i64| ff.at(m).norm() * q.powf(m as f64 * e);
    let peak = ff.grid().exponents().map(s).fold(0.0, f64::max);
    if !(peak > 0.0) {
        return None;
    }
    let eps = 1e-13;
    let sig: Vec<i64> = ff.grid().exponents().filter(|&m| s(m) > eps * peak).collect();
    let lo = *sig.first()?;
    let mut hi = *sig.last()?;
    let f0 = ff.value_at_zero().norm();
    if f0 > 0.0 && f0 * q.powf(ff.grid().n_max as f64 * e) > eps * peak {
        hi = hi.max(((eps * peak / f0).ln() / (e * q.ln())).ceil() as i64);
    }
    Some((lo, hi))
}

/// Exponent below which `|j(q^k)| < J_EPS` for a run of points.
fn j_cutoff(bj: &BesselJ) -> i64 {
    let mut k = 0;
    let mut run = 0;
    while k > -400 {
        if bj.at_exp(k).abs() < J_EPS {
            run += 1;
            if run >= 6 {
                return k + 5;
            }
        } else {
            run = 0;
        }
        k -= 1;
    }
    k
}

/// Scale, position and frequency windows adapted to `f` and the wavelet: every scale and
/// frequency carrying relative energy above 1e-14, and positions out to where the
/// q-Bessel kernel has decayed for the lowest significant frequency.
pub fn auto_grids(f: &LatticeFunction, w: &WaveletDescriptor, ctx: &QContext) -> Result<PlaneGrids> {
    let ectx = w.context(ctx);
    let bj = BesselJ::new(&ectx);
    auto_grids_with(f, w, &bj, &ectx)
}

fn auto_grids_with(f: &LatticeFunction, w: &WaveletDescriptor, bj: &BesselJ, ectx: &QContext) -> Result<PlaneGrids> {
    let q = ectx.q();
    let wp = ectx.weight_power();
    let fg = f.grid();
    let reach = (18.0 / (wp * -q.log10())).ceil() as i64;
    // Above the frequency q^{jc - n_max} the kernel has decayed on every sample and the
    // spectrum only sees the constant extension toward the origin: no information there.
    let probe = LatticeGrid::new((fg.n_min - 40).max(j_cutoff(bj) - fg.n_max), fg.n_max + 2 * reach)?;
    let ff = bessel_fourier_with(f, probe, bj, ectx)?;
    let Some((m1, m2)) = contributing_range(&ff, wp, q) else {
        // f = 0: any small plane will do
        let g = LatticeGrid::new(fg.n_min, fg.n_max)?;
        return Ok(PlaneGrids { scales: g, positions: g, spectral: g });
    };
    let (g1, g2) = significant_range(&w.spectrum, 0.0, q, ENERGY_EPS)
        .ok_or_else(|| crate::error::QError::NotAdmissible("wavelet spectrum vanishes".into()))?;
    let settle = (17.0 / (2.0 * -q.log10())).ceil() as i64;
    Ok(PlaneGrids {
        scales: LatticeGrid::new(g1 - m2, g2 - m1)?,
        positions: LatticeGrid::new(j_cutoff(bj) - m2, settle - m1)?,
        spectral: LatticeGrid::new(m1, m2)?,
    })
}

/// Shared quantities of the spectral formulas for one wavelet and context.
struct Spectral<'a> {
    ectx: QContext,
    bj: BesselJ,
    w: &'a WaveletDescriptor,
    q: f64,
    wp: f64,
    c: f64,
}

impl<'a> Spectral<'a> {
    fn new(w: &'a WaveletDescriptor, ctx: &QContext) -> Self {
        let ectx = w.context(ctx);
        Spectral { bj: BesselJ::new(&ectx), q: ectx.q(), wp: ectx.weight_power(), c: ectx.c_alpha(), ectx, w }
    }

    fn j(&self, k: i64) -> f64 {
        self.bj.at_exp(k)
    }

    fn fg(&self, n: i64) -> C64 {
        self.w.spectrum.at(n)
    }

    fn weight(&self, n: i64) -> f64 {
        self.q.powf(n as f64 * self.wp)
    }

    /// `q^{-4a-2}`.
    fn inv_planch(&self) -> f64 {
        self.q.powf(-(4.0 * self.ectx.alpha() + 2.0))
    }

    /// `(1-q) sum_{k > k_hi} j(q^{k+m}) q^{k wp}`: positions between the window and the origin.
    fn origin_tail(&self, k_hi: i64, m: i64) -> f64 {
        let r = self.q.powf(self.wp);
        let mut s = self.weight(k_hi + 1) / (1.0 - r);
        let mut k = k_hi + 1;
        loop {
            let t = self.bj.one_minus_at_exp(k + m) * self.weight(k);
            s -= t;
            if t.abs() < 1e-20 * s.abs() || k - k_hi > 10_000 {
                break;
            }
            k += 1;
        }
        (1.0 - self.q) * s
    }

    /// `Q(m) = sum_i (1-q) q^{-i} sqrt(q^i) F(g)(q^{i+m}) P(i, m)` with the position integrals
    /// `P(i, m) = int Psi(q^i, b) j(b q^m) b^{2a+1} d_q b` taken over the plane.
    fn scale_position_sums(&self, plane: &TimeScalePlane) -> Vec<C64> {
        let g = plane.grids;
        let k_hi = g.positions.n_max;
        g.spectral
            .exponents()
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&m| {
                let jk: Vec<f64> = g.positions.exponents().map(|k| self.j(k + m) * self.weight(k)).collect();
                let tail = self.origin_tail(k_hi, m);
                let mut qm = C64::default();
                for (r, i) in g.scales.exponents().enumerate() {
                    let fg = self.fg(i + m);
                    if fg == C64::default() {
                        continue;
                    }
                    let row = plane.row_slice(r);
                    let mut p = C64::default();
                    for (v, w) in row.iter().zip(&jk) {
                        p += v * *w;
                    }
                    p = p * (1.0 - self.q) + plane.origin_by_index(r) * tail;
                    qm += fg * p * ((1.0 - self.q) * self.q.powf(-0.5 * i as f64));
                }
                qm
            })
            .collect()
    }
}

/// `Psi_{q,g}^alpha(f)` (or the classical `Phi` for a cosine-kind wavelet) on automatically
/// chosen grids.
pub fn wavelet_transform_auto(f: &LatticeFunction, w: &WaveletDescriptor, ctx: &QContext) -> Result<TimeScalePlane> {
    let grids = auto_grids(f, w, ctx)?;
    wavelet_transform_on(f, w, grids, ctx)
}

/// `Psi_{q,g}^alpha(f)` on the given scale and position windows; frequencies are chosen
/// automatically.
pub fn wavelet_transform(
    f: &LatticeFunction,
    w: &WaveletDescriptor,
    scale_grid: LatticeGrid,
    position_grid: LatticeGrid,
    ctx: &QContext,
) -> Result<TimeScalePlane> {
    let auto = auto_grids(f, w, ctx)?;
    wavelet_transform_on(f, w, PlaneGrids { scales: scale_grid, positions: position_grid, spectral: auto.spectral }, ctx)
}

/// Spectral evaluation
/// `Psi(a, b) = sqrt(a) q^{-4a-2} c int F(f)(l) conj(F(g)(a l)) j(b l) l^{2a+1} d_q l`.
pub fn wavelet_transform_on(
    f: &LatticeFunction,
    w: &WaveletDescriptor,
    grids: PlaneGrids,
    ctx: &QContext,
) -> Result<TimeScalePlane> {
    let sp = Spectral::new(w, ctx);
    let ff = bessel_fourier_with(f, grids.spectral, &sp.bj, &sp.ectx)?;
    let pre: Vec<(i64, C64)> = grids.spectral.exponents().map(|m| (m, ff.at(m) * sp.weight(m))).collect();
    let k_const = sp.c * sp.inv_planch() * (1.0 - sp.q);
    let rows: Vec<(Vec<C64>, C64)> = grids
        .scales
        .exponents()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&i| {
            let h: Vec<(i64, C64)> = pre.iter().map(|&(m, v)| (m, v * sp.fg(i + m).conj())).collect();
            let s = k_const * sp.q.powf(0.5 * i as f64);
            let vals = grids
                .positions
                .exponents()
                .map(|k| h.iter().map(|&(m, v)| v * sp.j(k + m)).sum::<C64>() * s)
                .collect();
            let origin = h.iter().map(|&(_, v)| v).sum::<C64>() * s;
            (vals, origin)
        })
        .collect();
    let mut plane = TimeScalePlane::zeros(grids, ctx, w.kind, &w.id);
    for (r, (vals, origin)) in rows.iter().enumerate() {
        plane.set_row(r, vals, *origin);
    }
    if !plane.sup_norm().is_finite() {
        return Err(QError::NonConvergence("wavelet coefficients are not finite".into()));
    }
    Ok(plane)
}

fn check_plane(plane: &TimeScalePlane, w: &WaveletDescriptor, ctx: &QContext) -> Result<()> {
    let ectx = w.context(ctx);
    if plane.kind != w.kind || (plane.q - ectx.q()).abs() > 1e-15 || (plane.alpha - ectx.alpha()).abs() > 1e-15 {
        return Err(QError::GridMismatch(format!(
            "plane (q = {}, alpha = {}, {:?}) does not match the wavelet context",
            plane.q, plane.alpha, plane.kind
        )));
    }
    Ok(())
}

/// Wavelet Parseval sum `(1/C_g) int int P1 conj(P2) b^{2a+1} d_q b d_q a / a^2`, with the
/// positions between the window and the origin carried by the origin column.
pub fn wavelet_parseval(p1: &TimeScalePlane, p2: &TimeScalePlane, w: &WaveletDescriptor, ctx: &QContext) -> Result<C64> {
    check_plane(p1, w, ctx)?;
    if p1.grids != p2.grids {
        return Err(QError::GridMismatch("Parseval needs both planes on the same grids".into()));
    }
    let ectx = w.context(ctx);
    let q = ectx.q();
    let wp = ectx.weight_power();
    let g = p1.grids;
    let tail = q.powf((g.positions.n_max + 1) as f64 * wp) / (1.0 - q.powf(wp));
    let mut s = C64::default();
    for (r, i) in g.scales.exponents().enumerate() {
        let mut row = C64::default();
        for (k, (a, b)) in g.positions.exponents().zip(p1.row_slice(r).iter().zip(p2.row_slice(r))) {
            row += a * b.conj() * q.powf(k as f64 * wp);
        }
        row += p1.origin_by_index(r) * p2.origin_by_index(r).conj() * tail;
        s += row * ((1.0 - q) * (1.0 - q) * q.powf(-(i as f64)));
    }
    Ok(s / w.c_g)
}

/// `(1/C_g) int int |Psi|^2 b^{2a+1} d_q b d_q a / a^2`; equals `||f||^2` for a transform of `f`.
pub fn wavelet_plancherel(plane: &TimeScalePlane, w: &WaveletDescriptor, ctx: &QContext) -> Result<f64> {
    Ok(wavelet_parseval(plane, plane, w, ctx)?.re)
}

/// `f(x) = (c/C_g) int int Psi(a, b) g_{a,b}(x) b^{2a+1} d_q b d_q a / a^2` on `target`, the
/// value at the origin included. `g_{a,b}` enters through its spectrum
/// `F(g_{a,b})(l) = sqrt(a) j(b l) F(g)(a l)`.
pub fn wavelet_reconstruct(
    plane: &TimeScalePlane,
    w: &WaveletDescriptor,
    target: LatticeGrid,
    ctx: &QContext,
) -> Result<LatticeFunction> {
    check_plane(plane, w, ctx)?;
    let sp = Spectral::new(w, ctx);
    let qm = sp.scale_position_sums(plane);
    let k = sp.c * sp.c / w.c_g * sp.inv_planch() * (1.0 - sp.q);
    let spec = plane.grids.spectral;
    let at = |n: Option<i64>| -> C64 {
        spec.exponents()
            .zip(&qm)
            .map(|(m, v)| v * (sp.weight(m) * n.map(|n| sp.j(n + m)).unwrap_or(1.0)))
            .sum::<C64>()
            * k
    };
    let v0 = at(None);
    Ok(LatticeFunction::from_exponent_fn(target, v0, |n| at(Some(n))))
}

/// Image of a plane under the reproducing kernel
/// `(c^2/C_g) int int F(a', b') <g_{a',b'}, g_{a,b}> b'^{2a+1} d_q b' d_q a' / a'^2`.
pub fn reproducing_kernel_apply(plane: &TimeScalePlane, w: &WaveletDescriptor, ctx: &QContext) -> Result<TimeScalePlane> {
    check_plane(plane, w, ctx)?;
    let sp = Spectral::new(w, ctx);
    let qm = sp.scale_position_sums(plane);
    let g = plane.grids;
    let k = sp.c * sp.c / w.c_g * sp.inv_planch() * (1.0 - sp.q);
    let pre: Vec<(i64, C64)> = g.spectral.exponents().zip(&qm).map(|(m, v)| (m, v * sp.weight(m))).collect();
    let rows: Vec<(Vec<C64>, C64)> = g
        .scales
        .exponents()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&i| {
            let h: Vec<(i64, C64)> = pre.iter().map(|&(m, v)| (m, v * sp.fg(i + m).conj())).collect();
            let s = k * sp.q.powf(0.5 * i as f64);
            let vals = g.positions.exponents().map(|kk| h.iter().map(|&(m, v)| v * sp.j(kk + m)).sum::<C64>() * s).collect();
            (vals, h.iter().map(|&(_, v)| v).sum::<C64>() * s)
        })
        .collect();
    let mut out = plane.clone();
    for (r, (vals, origin)) in rows.iter().enumerate() {
        out.set_row(r, vals, *origin);
    }
    Ok(out)
}

/// `max |F - P F| / max |F|` where `P` is the reproducing-kernel projection; near zero exactly
/// when the plane is the transform of some function.
pub fn reproducing_kernel_check(plane: &TimeScalePlane, w: &WaveletDescriptor, ctx: &QContext) -> Result<f64> {
    let projected = reproducing_kernel_apply(plane, w, ctx)?;
    let s = plane.sup_norm();
    let d = plane.lin_comb(C64::new(1.0, 0.0), &projected, C64::new(-1.0, 0.0))?.sup_norm();
    Ok(if s == 0.0 { d } else { d / s })
}
