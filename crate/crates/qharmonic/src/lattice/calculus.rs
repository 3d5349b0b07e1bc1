use num_complex::Complex64 as C64;

use crate::error::Result;
use crate::lattice::jackson::integrate_power;
use crate::lattice::{LatticeFunction, QContext};

/// `D_q f(x) = (f(x) - f(qx)) / ((1-q) x)` on the window; `D_q f(0) = 0`.
pub fn q_derivative(f: &LatticeFunction, ctx: &QContext) -> LatticeFunction {
    q_derivative_with_limit(f, C64::default(), ctx)
}

/// As [`q_derivative`] with a caller-supplied limit at the origin.
pub fn q_derivative_with_limit(f: &LatticeFunction, at_zero: C64, ctx: &QContext) -> LatticeFunction {
    let q = ctx.q();
    let g = f.grid();
    LatticeFunction::from_exponent_fn(g, at_zero, |n| f.diff(n, n + 1) / ((1.0 - q) * ctx.point(n))).with_role(f.role())
}

/// `(int |f|^p x^{2 alpha + 1} d_q x)^{1/p}`.
pub fn lp_norm(f: &LatticeFunction, p: f64, ctx: &QContext) -> Result<f64> {
    let g = f.grid();
    let abs_p = LatticeFunction::from_exponent_fn(g, C64::new(f.value_at_zero().norm().powf(p), 0.0), |n| {
        C64::new(f.at(n).norm().powf(p), 0.0)
    });
    let s = integrate_power(&abs_p, 2.0 * ctx.alpha() + 1.0, ctx)?;
    Ok(s.re.max(0.0).powf(1.0 / p))
}

/// `P_{n,m}(f) = sup_{x in window, 0<=k<=n} |(1+x^2)^m D_q^k f(x)|`.
pub fn seminorm(f: &LatticeFunction, n: usize, m: u32, ctx: &QContext) -> f64 {
    let mut d = f.clone();
    let mut best: f64 = 0.0;
    for k in 0..=n {
        if k > 0 {
            d = q_derivative(&d, ctx);
        }
        for e in d.grid().exponents() {
            let x = ctx.point(e);
            best = best.max((1.0 + x * x).powi(m as i32) * d.at(e).norm());
        }
    }
    best
}

/// Relative weighted L^2 distance `||f - r|| / ||r||` with weight `x^{2 alpha + 1}`,
/// summed over the exponents `exps`.
pub fn rel_l2_error_on(
    f: &LatticeFunction,
    reference: &LatticeFunction,
    exps: impl Iterator<Item = i64>,
    ctx: &QContext,
) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for n in exps {
        let w = ctx.weight(n);
        num += (f.at(n) - reference.at(n)).norm_sqr() * w;
        den += reference.at(n).norm_sqr() * w;
    }
    if den == 0.0 {
        return num.sqrt();
    }
    (num / den).sqrt()
}

/// Relative weighted L^2 distance over the reference window.
pub fn rel_l2_error(f: &LatticeFunction, reference: &LatticeFunction, ctx: &QContext) -> f64 {
    rel_l2_error_on(f, reference, reference.grid().exponents(), ctx)
}

/// Max pointwise distance relative to the largest reference magnitude.
pub fn rel_sup_error_on(f: &LatticeFunction, reference: &LatticeFunction, exps: impl Iterator<Item = i64> + Clone) -> f64 {
    let scale = exps.clone().map(|n| reference.at(n).norm()).fold(0.0, f64::max);
    let err = exps.map(|n| (f.at(n) - reference.at(n)).norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        err
    } else {
        err / scale
    }
}
