use num_complex::Complex64 as C64;

use crate::error::Result;
use crate::harmonic::bessel_fourier_on;
use crate::lattice::qarith::qpoch_inf;
use crate::lattice::{integrate_power, q_gamma_base, LatticeFunction, LatticeGrid, QContext};

/// `(q^{2j+2}; q^2)_inf / (q^{2j+2a+1}; q^2)_inf` minus one, summed in logarithms.
fn kernel_minus_one(j: i64, ctx: &QContext) -> f64 {
    let q = ctx.q();
    let q2 = q * q;
    let mut u = q.powi(2 * j as i32 + 2);
    let mut v = q.powf(2.0 * j as f64 + 2.0 * ctx.alpha() + 1.0);
    let mut s = 0.0;
    while u.max(v) > 1e-19 {
        s += (-u).ln_1p() - (-v).ln_1p();
        u *= q2;
        v *= q2;
    }
    s.exp_m1()
}

/// `(1+q) Gamma_{q^2}(a+1) / (Gamma_{q^2}(1/2) Gamma_{q^2}(a+1/2))`.
pub fn riemann_liouville_constant(ctx: &QContext) -> Result<f64> {
    let (q, a) = (ctx.q(), ctx.alpha());
    let b = q * q;
    Ok((1.0 + q) * q_gamma_base(a + 1.0, b, ctx)? / (q_gamma_base(0.5, b, ctx)? * q_gamma_base(a + 0.5, b, ctx)?))
}

/// `q^{a+1/2} (1+q)^{1/2-a} / Gamma_{q^2}(a+1/2)`, the constant making `F_{alpha,q} = F_q o W`.
pub fn weyl_constant(ctx: &QContext) -> Result<f64> {
    let (q, a) = (ctx.q(), ctx.alpha());
    Ok(q.powf(a + 0.5) * (1.0 + q).powf(0.5 - a) / q_gamma_base(a + 0.5, q * q, ctx)?)
}

/// `Gamma_{q^2}(1/2) / (q^{3a+3/2} (1+q)^{a+1/2} Gamma_{q^2}(a+1))`.
pub fn k_constant(ctx: &QContext) -> Result<f64> {
    let (q, a) = (ctx.q(), ctx.alpha());
    let b = q * q;
    Ok(q_gamma_base(0.5, b, ctx)? / (q.powf(3.0 * a + 1.5) * (1.0 + q).powf(a + 0.5) * q_gamma_base(a + 1.0, b, ctx)?))
}

/// Pick the sample with the smaller rounding bound: a direct sum, or an offset from the
/// value at zero. A direct sum below the rounding level of its terms is returned as zero.
/// Inputs coming out of Fourier sums carry errors of a few ulps each, hence the margin of
/// 64 ulps. Left in, that noise decays only like `1/x` and the weight `t^{2a}` of a
/// following Weyl integral amplifies it.
const NOISE_ULPS: f64 = 64.0;

fn choose(direct: C64, direct_abs: f64, offset: C64, offset_abs: f64, v0: C64) -> (C64, C64) {
    if direct_abs < 1e-3 * (offset_abs + v0.norm()) {
        let d = if direct.norm() <= NOISE_ULPS * f64::EPSILON * direct_abs { C64::default() } else { direct };
        (d, d - v0)
    } else {
        (v0 + offset, offset)
    }
}

/// `R_{alpha,q} f(x) = C_R int_0^1 (t^2 q^2; q^2)_inf / (t^2 q^{2a+1}; q^2)_inf f(xt) d_q t`.
pub fn riemann_liouville(f: &LatticeFunction, ctx: &QContext) -> Result<LatticeFunction> {
    let q = ctx.q();
    let cr = riemann_liouville_constant(ctx)? * (1.0 - q);
    let g = f.grid();
    let span = (g.n_max - g.n_min) as usize + 1;
    let wm1: Vec<f64> = (0..span as i64).map(|j| kernel_minus_one(j, ctx)).collect();
    // R(1) = C_R (1-q) sum_n w_n q^n
    let mut r1 = 1.0 / (1.0 - q);
    let mut n = 0i64;
    loop {
        let t = if (n as usize) < span { wm1[n as usize] } else { kernel_minus_one(n, ctx) } * q.powi(n as i32);
        r1 += t;
        if t.abs() < 1e-20 || n > 100_000 {
            break;
        }
        n += 1;
    }
    let f0 = f.value_at_zero();
    let v0 = f0 * (cr * r1);
    let mut values = Vec::with_capacity(span);
    let mut offsets = Vec::with_capacity(span);
    for m in g.exponents() {
        let mut off = C64::default();
        let mut off_abs = 0.0;
        let mut dir = C64::default();
        let mut dir_abs = 0.0;
        for n in 0..=(g.n_max - m) {
            let w = (1.0 + wm1[n as usize]) * q.powi(n as i32);
            let d = f.offset_at(m + n) * w;
            off += d;
            off_abs += d.norm();
            let v = f.at(m + n) * w;
            dir += v;
            dir_abs += v.norm();
        }
        if f0 != C64::default() {
            // sum_{n > n_max - m} w_n q^n
            let n0 = g.n_max - m + 1;
            let mut tail = q.powi(n0 as i32) / (1.0 - q);
            let mut n = n0;
            loop {
                let t = kernel_minus_one(n, ctx) * q.powi(n as i32);
                tail += t;
                if t.abs() < 1e-20 * tail || n - n0 > 100_000 {
                    break;
                }
                n += 1;
            }
            dir += f0 * tail;
            dir_abs += f0.norm() * tail;
        }
        let (v, o) = choose(dir * cr, dir_abs * cr, off * cr, off_abs * cr, v0);
        values.push(v);
        offsets.push(o);
    }
    Ok(LatticeFunction::from_parts(g, values, offsets, v0)?.with_role(f.role()))
}

/// `W_{alpha,q} f(x) = C_W int_{qx}^inf (q^2 x^2/t^2; q^2)_inf / (q^{2a+1} x^2/t^2; q^2)_inf f(t) t^{2a} d_q t`.
///
/// The kernel vanishes at `t = qx`, so the Jackson sum runs over `t = x q^{-j}`, `j >= 0`.
pub fn weyl(f: &LatticeFunction, ctx: &QContext) -> Result<LatticeFunction> {
    let q = ctx.q();
    let e = 2.0 * ctx.alpha() + 1.0;
    let cw = weyl_constant(ctx)? * (1.0 - q);
    let g = f.grid();
    let span = (g.n_max - g.n_min) as usize + 1;
    let rm1: Vec<f64> = (0..span as i64).map(|j| kernel_minus_one(j, ctx)).collect();
    let v0 = integrate_power(f, e - 1.0, ctx)? * (cw / (1.0 - q));
    let f0 = f.value_at_zero();
    let pw = |n: i64| q.powf(n as f64 * e);
    // suffix sums of f(q^n) q^{n e} for n > m, origin tail included
    let mut suffix = vec![C64::default(); span + 1];
    suffix[span] = f0 * (pw(g.n_max + 1) / (1.0 - q.powf(e)));
    let mut suffix_abs = vec![0.0; span + 1];
    suffix_abs[span] = suffix[span].norm();
    for idx in (0..span).rev() {
        let n = g.n_min + idx as i64;
        let t = f.at(n) * pw(n);
        suffix[idx] = suffix[idx + 1] + t;
        suffix_abs[idx] = suffix_abs[idx + 1] + t.norm();
    }
    let mut values = Vec::with_capacity(span);
    let mut offsets = Vec::with_capacity(span);
    for (idx, m) in g.exponents().enumerate() {
        let mut dir = C64::default();
        let mut dir_abs = 0.0;
        let mut off = -suffix[idx + 1];
        let mut off_abs = suffix_abs[idx + 1];
        for n in g.n_min..=m {
            let j = (m - n) as usize;
            let t = f.at(n) * pw(n);
            let d = t * (1.0 + rm1[j]);
            dir += d;
            dir_abs += d.norm();
            let o = t * rm1[j];
            off += o;
            off_abs += o.norm();
        }
        let (v, o) = choose(dir * cw, dir_abs * cw, off * cw, off_abs * cw, v0);
        values.push(v);
        offsets.push(o);
    }
    Ok(LatticeFunction::from_parts(g, values, offsets, v0)?.with_role(f.role()))
}

fn multiply_power(spec: &LatticeFunction, e: f64, ctx: &QContext) -> LatticeFunction {
    let q = ctx.q();
    let g = spec.grid();
    let values: Vec<C64> = g.exponents().map(|n| spec.at(n) * q.powf(n as f64 * e)).collect();
    LatticeFunction::from_parts(g, values.clone(), values, C64::default()).expect("same grid").with_role(spec.role())
}

/// `K_{alpha,q,1} f = kappa F_q^{-1}(|l|^{2a+1} F_q f)`; the spectral window is the window of `f`.
pub fn k1(f: &LatticeFunction, ctx: &QContext) -> Result<LatticeFunction> {
    k1_on(f, f.grid(), ctx)
}

/// [`k1`] with the frequencies `q^m`, `m` in `spectral`.
pub fn k1_on(f: &LatticeFunction, spectral: LatticeGrid, ctx: &QContext) -> Result<LatticeFunction> {
    let cc = ctx.cosine();
    let spec = bessel_fourier_on(f, spectral, &cc)?;
    let m = multiply_power(&spec, 2.0 * ctx.alpha() + 1.0, ctx);
    Ok(bessel_fourier_on(&m, f.grid(), &cc)?.scale_real(k_constant(ctx)?).with_role(f.role()))
}

/// `K_{alpha,q,2} f = kappa F_{alpha,q}^{-1}(|l|^{2a+1} F_{alpha,q} f)`.
pub fn k2(f: &LatticeFunction, ctx: &QContext) -> Result<LatticeFunction> {
    k2_on(f, f.grid(), ctx)
}

/// [`k2`] with the frequencies `q^m`, `m` in `spectral`.
pub fn k2_on(f: &LatticeFunction, spectral: LatticeGrid, ctx: &QContext) -> Result<LatticeFunction> {
    let spec = bessel_fourier_on(f, spectral, ctx)?;
    let m = multiply_power(&spec, 2.0 * ctx.alpha() + 1.0, ctx);
    let k = k_constant(ctx)? * ctx.q().powf(-(4.0 * ctx.alpha() + 2.0));
    Ok(bessel_fourier_on(&m, f.grid(), ctx)?.scale_real(k).with_role(f.role()))
}

/// `R^{-1} = W o K2`.
pub fn riemann_liouville_inverse(f: &LatticeFunction, ctx: &QContext) -> Result<LatticeFunction> {
    weyl(&k2(f, ctx)?, ctx)
}

/// [`riemann_liouville_inverse`] with an explicit spectral window for `K2`.
pub fn riemann_liouville_inverse_on(f: &LatticeFunction, spectral: LatticeGrid, ctx: &QContext) -> Result<LatticeFunction> {
    weyl(&k2_on(f, spectral, ctx)?, ctx)
}

/// `W^{-1} = R o K1`.
pub fn weyl_inverse(f: &LatticeFunction, ctx: &QContext) -> Result<LatticeFunction> {
    riemann_liouville(&k1(f, ctx)?, ctx)
}

/// [`weyl_inverse`] with an explicit spectral window for `K1`.
pub fn weyl_inverse_on(f: &LatticeFunction, spectral: LatticeGrid, ctx: &QContext) -> Result<LatticeFunction> {
    riemann_liouville(&k1_on(f, spectral, ctx)?, ctx)
}

/// Check value used by tests: `(q^2;q^2)_inf / (q^{2a+1};q^2)_inf`, the kernel at `t = 1`.
pub fn kernel_at_one(ctx: &QContext) -> Result<f64> {
    let q = ctx.q();
    Ok(qpoch_inf(q * q, q * q, ctx)? / qpoch_inf(q.powf(2.0 * ctx.alpha() + 1.0), q * q, ctx)?)
}
