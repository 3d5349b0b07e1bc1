use num_complex::Complex64 as C64;

use crate::error::{QError, Result};
use crate::lattice::{integrate_power, LatticeFunction, LatticeGrid, QContext, Role};
use crate::special::BesselJ;

/// `F_{alpha,q} f(lambda) = c_{alpha,q} int f(x) j(lambda x) x^{2a+1} d_q x` on the window of `f`.
pub fn bessel_fourier(f: &LatticeFunction, ctx: &QContext) -> Result<LatticeFunction> {
    bessel_fourier_on(f, f.grid(), ctx)
}

/// As [`bessel_fourier`], sampled at `lambda = q^l` for `l` in `out`.
///
/// The value at `lambda = 0` is `c int f x^{2a+1}`. Near the origin the samples are formed
/// as offsets `-c int f (1 - j(lambda x)) x^{2a+1}` from it; at large `lambda`, where the
/// transform is tiny, the kernel sum `c int f j(lambda x) x^{2a+1}` is used directly.
pub fn bessel_fourier_on(f: &LatticeFunction, out: LatticeGrid, ctx: &QContext) -> Result<LatticeFunction> {
    let bj = BesselJ::new(ctx);
    bessel_fourier_with(f, out, &bj, ctx)
}

pub(crate) fn bessel_fourier_with(f: &LatticeFunction, out: LatticeGrid, bj: &BesselJ, ctx: &QContext) -> Result<LatticeFunction> {
    if !f.max_abs().is_finite() {
        return Err(QError::InvalidParameter("Fourier transform of non-finite input samples".into()));
    }
    let q = ctx.q();
    let w = ctx.weight_power();
    let c = ctx.c_alpha();
    let g = f.grid();
    let v0 = integrate_power(f, 2.0 * ctx.alpha() + 1.0, ctx)? * c;
    let f0 = f.value_at_zero();
    let weights: Vec<f64> = g.exponents().map(|n| q.powf(n as f64 * w)).collect();
    let scale = c * (1.0 - q);
    let mut values = Vec::with_capacity(out.len());
    let mut offsets = Vec::with_capacity(out.len());
    for l in out.exponents() {
        // both `int f (1 - j)` and `int f j`, with their absolute sums as rounding bounds
        let mut s_m = C64::default();
        let mut s_j = C64::default();
        let mut a_m = 0.0;
        let mut a_j = 0.0;
        for (i, n) in g.exponents().enumerate() {
            let fv = f.at(n) * weights[i];
            let m = bj.one_minus_at_exp(n + l);
            let j = bj.at_exp(n + l);
            s_m += fv * m;
            s_j += fv * j;
            a_m += fv.norm() * m.abs();
            a_j += fv.norm() * j.abs();
        }
        if f0 != C64::default() {
            let mut n = g.n_max + 1;
            let mut tail_m = 0.0;
            loop {
                let t = bj.one_minus_at_exp(n + l) * q.powf(n as f64 * w);
                tail_m += t;
                if (t.abs() < 1e-20 * tail_m.abs() && n + l > 0) || t == 0.0 || n - g.n_max > 100_000 {
                    break;
                }
                n += 1;
            }
            let geo = q.powf((g.n_max + 1) as f64 * w) / (1.0 - q.powf(w));
            s_m += f0 * tail_m;
            s_j += f0 * (geo - tail_m);
            a_m += f0.norm() * tail_m.abs();
            a_j += f0.norm() * geo;
        }
        let off = -s_m * scale;
        if a_j * scale < 1e-3 * (v0.norm() + a_m * scale) {
            // a direct sum within 64 ulps of its absolute terms is rounding noise; spectral
            // multipliers |l|^{2a+1} would otherwise blow it up
            let v = if s_j.norm() <= 64.0 * f64::EPSILON * a_j { C64::default() } else { s_j * scale };
            values.push(v);
            offsets.push(v - v0);
        } else {
            values.push(v0 + off);
            offsets.push(off);
        }
    }
    if offsets.iter().chain(values.iter()).any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        if ctx.is_lattice_compatible() {
            return Err(QError::NonConvergence(format!("Fourier sum overflowed (max |f| = {:e})", f.max_abs())));
        }
        return Err(QError::NonConvergence(format!(
            "q-Bessel kernel not representable on the lattice for q = {q} (log(1-q)/log q = {:.6})",
            ctx.lattice_ratio()
        )));
    }
    Ok(LatticeFunction::from_parts(out, values, offsets, v0)?.with_role(Role::Frequency))
}

/// `F^{-1} = q^{-4a-2} F`.
pub fn bessel_fourier_inverse(spec: &LatticeFunction, ctx: &QContext) -> Result<LatticeFunction> {
    bessel_fourier_inverse_on(spec, spec.grid(), ctx)
}

pub fn bessel_fourier_inverse_on(spec: &LatticeFunction, out: LatticeGrid, ctx: &QContext) -> Result<LatticeFunction> {
    let k = ctx.q().powf(-(4.0 * ctx.alpha() + 2.0));
    Ok(bessel_fourier_on(spec, out, ctx)?.scale_real(k).with_role(Role::Signal))
}

/// `F_q = F_{-1/2,q}`.
pub fn cosine_fourier(f: &LatticeFunction, ctx: &QContext) -> Result<LatticeFunction> {
    bessel_fourier(f, &ctx.cosine())
}

/// `F_q^{-1} = F_q`.
pub fn cosine_fourier_inverse(spec: &LatticeFunction, ctx: &QContext) -> Result<LatticeFunction> {
    bessel_fourier_inverse(spec, &ctx.cosine())
}

/// Left side of the orthogonality relation,
/// `(xy)^{a+1} int_0^inf j(xt) j(yt) t^{2a+1} d_q t`, for lattice points `x = q^i`, `y = q^k`.
pub fn orthogonality_check(i: i64, k: i64, ctx: &QContext) -> Result<C64> {
    let bj = BesselJ::new(ctx);
    let q = ctx.q();
    let w = ctx.weight_power();
    let s = crate::lattice::lattice_sum(
        |n| C64::new(bj.at_exp(i + n) * bj.at_exp(k + n) * q.powf(n as f64 * w), 0.0),
        -(i.min(k)) - 40,
        -(i.min(k)) + 40,
        ctx,
    )?;
    let xy = q.powi((i + k) as i32);
    Ok(s * ((1.0 - q) * xy.powf(ctx.alpha() + 1.0)))
}

/// Diagonal value `(1+q)^{2a} Gamma_{q^2}(a+1)^2 q^{2(a+1)} / (1-q)` of the orthogonality relation.
pub fn orthogonality_constant(ctx: &QContext) -> Result<f64> {
    let q = ctx.q();
    let a = ctx.alpha();
    let g = crate::lattice::q_gamma_base(a + 1.0, q * q, ctx)?;
    Ok((1.0 + q).powf(2.0 * a) * g * g * q.powf(2.0 * (a + 1.0)) / (1.0 - q))
}
