use num_complex::Complex64 as C64;

use crate::error::{QError, Result};
use crate::harmonic::TranslationKernel;
use crate::lattice::{integrate_product, LatticeFunction, QContext};

fn exponent(a: f64, ctx: &QContext) -> Result<i64> {
    ctx.exponent_of(a)
        .ok_or_else(|| QError::InvalidParameter(format!("scale {a} is not a lattice point")))
}

/// `g_a(x) = a^{-(2a+2)} g(x/a)` for `a = q^i`; the window moves by `i`.
pub fn dilate(g: &LatticeFunction, a: f64, ctx: &QContext) -> Result<LatticeFunction> {
    let i = exponent(a, ctx)?;
    Ok(dilate_exp(g, i, ctx))
}

pub fn dilate_exp(g: &LatticeFunction, i: i64, ctx: &QContext) -> LatticeFunction {
    g.shift_scale(i, ctx.point(i).powf(-ctx.weight_power()))
}

/// `H_a f(x) = a^{-1/2} f(x/a)` for `a = q^i`.
pub fn dilatation(f: &LatticeFunction, a: f64, ctx: &QContext) -> Result<LatticeFunction> {
    let i = exponent(a, ctx)?;
    Ok(dilatation_exp(f, i, ctx))
}

pub fn dilatation_exp(f: &LatticeFunction, i: i64, ctx: &QContext) -> LatticeFunction {
    f.shift_scale(i, ctx.point(i).powf(-0.5))
}

/// `g_{a,b} = sqrt(a) T_{q,b}^alpha(g_a)` on the window of `g_a`; `b = 0` gives `sqrt(a) g_a`.
pub fn wavelet_family(g: &LatticeFunction, a: f64, b: f64, ctx: &QContext) -> Result<LatticeFunction> {
    let i = exponent(a, ctx)?;
    let k = if b == 0.0 { None } else { Some(exponent(b, ctx)?) };
    let ga = dilate_exp(g, i, ctx);
    let kernel = TranslationKernel::new(ctx)?;
    Ok(kernel.translate_to(&ga, k, ga.grid()).scale_real(ctx.point(i).sqrt()))
}

/// `Psi(f)(a, b) = c_{alpha,q} int f conj(g_{a,b}) x^{2a+1} d_q x` straight from the definition,
/// with `a = q^i` and `b = q^k` (`None` for the origin). Used to cross-check the spectral path.
pub fn wavelet_coefficient_direct(
    f: &LatticeFunction,
    g: &LatticeFunction,
    i: i64,
    k: Option<i64>,
    kernel: &TranslationKernel,
) -> Result<C64> {
    let ctx = kernel.context();
    let ga = dilate_exp(g, i, ctx);
    let gab = kernel.translate_to(&ga, k, f.grid()).scale_real(ctx.point(i).sqrt());
    Ok(integrate_product(f, &gab.conj(), ctx)? * ctx.c_alpha())
}
