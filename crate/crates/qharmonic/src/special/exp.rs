use num_complex::Complex64 as C64;

use crate::error::Result;
use crate::lattice::{lattice_sum, LatticeFunction, LatticeGrid, QContext};
use crate::special::operator::q_bessel_operator;

/// `e_{q^2}^{-x^2} = 1 / (-(1-q^2) x^2; q^2)_inf`.
pub fn q_exponential_sq(x: f64, ctx: &QContext) -> f64 {
    (-log_product(x, ctx)).exp()
}

/// `e_{q^2}^{-x^2} - 1`, accurate for small `x`.
pub fn q_exponential_sq_offset(x: f64, ctx: &QContext) -> f64 {
    (-log_product(x, ctx)).exp_m1()
}

/// `log (-(1-q^2) x^2; q^2)_inf`.
fn log_product(x: f64, ctx: &QContext) -> f64 {
    let q2 = ctx.base();
    let mut u = (1.0 - q2) * x * x;
    let mut log = 0.0;
    while u > 1e-18 * (1.0 + log) {
        log += u.ln_1p();
        u *= q2;
    }
    log + u / (1.0 - q2)
}

/// Exponent `q^{-(2a+2)} / (1+q)^2` of the Gaussian whose transform is `q^{4a+2} e_{q^2}^{-x^2}`.
pub fn gaussian_exponent(ctx: &QContext) -> f64 {
    let q = ctx.q();
    q.powf(-(2.0 * ctx.alpha() + 2.0)) / (1.0 + q).powi(2)
}

/// `A_alpha = c_{alpha,q} int_0^inf x^{2a+1} e_{q^2}^{-x^2} d_q x`.
pub fn gaussian_amplitude(ctx: &QContext) -> Result<f64> {
    let w = ctx.weight_power();
    let s = lattice_sum(
        |n| C64::new(q_exponential_sq(ctx.point(n), ctx) * ctx.q().powf(n as f64 * w), 0.0),
        -10,
        30,
        ctx,
    )?;
    Ok(ctx.c_alpha() * (1.0 - ctx.q()) * s.re)
}

/// `G(x) = A_alpha e_{q^2}^{-gamma x^2}` with `gamma` from [`gaussian_exponent`].
pub fn gaussian(grid: LatticeGrid, ctx: &QContext) -> Result<LatticeFunction> {
    let a = gaussian_amplitude(ctx)?;
    let r = gaussian_exponent(ctx).sqrt();
    let logs: Vec<f64> = grid.exponents().map(|n| log_product(r * ctx.point(n), ctx)).collect();
    let values = logs.iter().map(|l| C64::new(a * (-l).exp(), 0.0)).collect();
    let offsets = logs.iter().map(|l| C64::new(a * (-l).exp_m1(), 0.0)).collect();
    LatticeFunction::from_parts(grid, values, offsets, C64::new(a, 0.0))
}

/// Sample `x -> e_{q^2}^{-(x / q^l)^2}` with accurate offsets.
pub fn sample_q_exponential(grid: LatticeGrid, l: i64, ctx: &QContext) -> LatticeFunction {
    let logs: Vec<f64> = grid.exponents().map(|n| log_product(ctx.point(n - l), ctx)).collect();
    let values = logs.iter().map(|l| C64::new((-l).exp(), 0.0)).collect();
    let offsets = logs.iter().map(|l| C64::new((-l).exp_m1(), 0.0)).collect();
    LatticeFunction::from_parts(grid, values, offsets, C64::new(1.0, 0.0)).expect("length matches grid")
}

/// Gaussian wavelet `g = Delta_{alpha,q} G`; its transform is `-q^{2a+1} x^2 e_{q^2}^{-x^2}`.
pub fn gaussian_wavelet(grid: LatticeGrid, ctx: &QContext) -> Result<LatticeFunction> {
    let wide = LatticeGrid::new(grid.n_min, grid.n_max + 1)?;
    let big = gaussian(wide, ctx)?;
    let g = q_bessel_operator(&big, ctx).restrict(grid);
    let q = ctx.q();
    let s = q.powf(2.0 * ctx.alpha() + 1.0);
    let a = big.value_at_zero().re;
    let v0 = -a * gaussian_exponent(ctx) * (1.0 - q * q) * (1.0 - q * s) / (1.0 - q).powi(2);
    Ok(g.with_value_at_zero(C64::new(v0, 0.0)).with_role(crate::lattice::Role::Wavelet))
}
