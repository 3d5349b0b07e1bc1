use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::error::Result;
use crate::harmonic::translation::TranslationKernel;
use crate::lattice::{integrate_product, LatticeFunction, QContext};

/// `f *_B g (x) = c_{alpha,q} int T_x f(y) g(y) y^{2a+1} d_q y` on the window of `f`.
pub fn bessel_convolve(f: &LatticeFunction, g: &LatticeFunction, ctx: &QContext) -> Result<LatticeFunction> {
    let kernel = TranslationKernel::new(ctx)?;
    bessel_convolve_with(f, g, &kernel)
}

pub(crate) fn bessel_convolve_with(f: &LatticeFunction, g: &LatticeFunction, kernel: &TranslationKernel) -> Result<LatticeFunction> {
    let ctx = kernel.context();
    let q = ctx.q();
    let w = ctx.weight_power();
    let c = ctx.c_alpha();
    let gg = g.grid();
    let g0 = g.value_at_zero();
    let at = |x: i64| -> C64 {
        let mut s = C64::default();
        for y in gg.exponents() {
            s += kernel.eval(f, Some(x), Some(y)) * g.at(y) * q.powf(y as f64 * w);
        }
        if g0 != C64::default() {
            let mut y = gg.n_max + 1;
            loop {
                let t = kernel.eval(f, Some(x), Some(y)) * g0 * q.powf(y as f64 * w);
                s += t;
                if t.norm() <= 1e-18 * s.norm() || t.norm() == 0.0 || y - gg.n_max > 4000 {
                    break;
                }
                y += 1;
            }
        }
        s * (c * (1.0 - q))
    };
    let grid = f.grid();
    let values: Vec<C64> = grid.exponents().collect::<Vec<_>>().par_iter().map(|&x| at(x)).collect();
    let v0 = integrate_product(f, g, ctx)? * c;
    Ok(LatticeFunction::new(grid, values, v0)?.with_role(f.role()))
}

/// `f *_q g`, the `alpha = -1/2` convolution.
pub fn cosine_convolve(f: &LatticeFunction, g: &LatticeFunction, ctx: &QContext) -> Result<LatticeFunction> {
    bessel_convolve(f, g, &ctx.cosine())
}
