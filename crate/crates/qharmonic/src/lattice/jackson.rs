use num_complex::Complex64 as C64;

use crate::error::{QError, Result};
use crate::lattice::{LatticeFunction, LatticeGrid, QContext};

const BLOCK: i64 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Outer,
    Inner,
}

/// Sum `h(n)` over all integers `n`: the window `lo..=hi` exactly, then blocks of terms
/// on each side until a block is negligible against the accumulated sum (or below the
/// rounding level of the terms already summed).
pub fn lattice_sum(h: impl Fn(i64) -> C64, lo: i64, hi: i64, ctx: &QContext) -> Result<C64> {
    sum_with_tails(&h, lo, hi, true, true, ctx)
}

/// Sum `h(n)` for `n >= lo`, window `lo..=hi` plus inner tail.
pub fn lattice_sum_from(h: impl Fn(i64) -> C64, lo: i64, hi: i64, ctx: &QContext) -> Result<C64> {
    sum_with_tails(&h, lo, hi, false, true, ctx)
}

fn sum_with_tails(h: &dyn Fn(i64) -> C64, lo: i64, hi: i64, outer: bool, inner: bool, ctx: &QContext) -> Result<C64> {
    let mut acc = C64::default();
    let mut abs_acc = 0.0;
    for n in lo..=hi {
        let t = h(n);
        acc += t;
        abs_acc += t.norm();
    }
    let mut used = (hi - lo + 1).max(0) as usize;
    for side in [Side::Outer, Side::Inner] {
        if (side == Side::Outer && !outer) || (side == Side::Inner && !inner) {
            continue;
        }
        let mut edge = if side == Side::Outer { lo } else { hi };
        loop {
            let mut block = C64::default();
            let mut block_abs = 0.0;
            for _ in 0..BLOCK {
                edge = if side == Side::Outer { edge - 1 } else { edge + 1 };
                let t = h(edge);
                block += t;
                block_abs += t.norm();
            }
            used += BLOCK as usize;
            acc += block;
            abs_acc += block_abs;
            if !block_abs.is_finite() {
                return Err(QError::NonConvergence(format!(
                    "{} tail of lattice sum produced non-finite terms near exponent {edge}",
                    side_name(side)
                )));
            }
            if block_abs <= ctx.tail_tol * acc.norm() || block_abs <= f64::EPSILON * 1e-2 * abs_acc {
                break;
            }
            if used > ctx.max_terms {
                return Err(QError::NonConvergence(format!(
                    "{} tail of lattice sum still at relative size {:.3e} after {} terms",
                    side_name(side),
                    block_abs / acc.norm().max(f64::MIN_POSITIVE),
                    used
                )));
            }
        }
    }
    Ok(acc)
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::Outer => "outer (x -> infinity)",
        Side::Inner => "inner (x -> 0)",
    }
}

/// `int_0^a f(x) d_q x = (1-q) a sum_{n>=0} f(a q^n) q^n`.
pub fn jackson_integral_0_to_a(f: impl Fn(f64) -> C64, a: f64, ctx: &QContext) -> Result<C64> {
    let q = ctx.q();
    let s = lattice_sum_from(|n| f(a * q.powi(n as i32)) * q.powi(n as i32), 0, 16, ctx)?;
    Ok(s * ((1.0 - q) * a))
}

/// `int_0^inf f(x) d_q x = (1-q) sum_n f(q^n) q^n`, starting from the window `grid`.
pub fn jackson_integral_0_to_inf(f: impl Fn(f64) -> C64, grid: &LatticeGrid, ctx: &QContext) -> Result<C64> {
    let q = ctx.q();
    let s = lattice_sum(
        |n| {
            let x = q.powi(n as i32);
            f(x) * x
        },
        grid.n_min,
        grid.n_max,
        ctx,
    )?;
    Ok(s * (1.0 - q))
}

/// `int_a^b f d_q x = int_0^b - int_0^a`.
pub fn jackson_integral_a_to_b(f: impl Fn(f64) -> C64, a: f64, b: f64, ctx: &QContext) -> Result<C64> {
    Ok(jackson_integral_0_to_a(&f, b, ctx)? - jackson_integral_0_to_a(&f, a, ctx)?)
}

/// `int_0^inf f(x) x^p d_q x` for a lattice function; the tail toward the origin is the
/// closed geometric sum of the constant extension.
pub fn integrate_power(f: &LatticeFunction, p: f64, ctx: &QContext) -> Result<C64> {
    let q = ctx.q();
    let e = p + 1.0;
    if !(e > 0.0) && f.value_at_zero() != C64::default() {
        return Err(QError::NonConvergence(format!(
            "int f x^{p} diverges at the origin for f(0) = {}",
            f.value_at_zero()
        )));
    }
    let g = f.grid();
    let mut s = C64::default();
    for n in g.exponents() {
        s += f.at(n) * q.powf(n as f64 * e);
    }
    if f.value_at_zero() != C64::default() {
        let r = q.powf(e);
        s += f.value_at_zero() * q.powf((g.n_max + 1) as f64 * e) / (1.0 - r);
    }
    Ok(s * (1.0 - q))
}

/// `int_0^inf f(x) g(x) x^{2 alpha + 1} d_q x` (no conjugation).
pub fn integrate_product(f: &LatticeFunction, g: &LatticeFunction, ctx: &QContext) -> Result<C64> {
    let q = ctx.q();
    let e = ctx.weight_power();
    let grid = f.grid().union(&g.grid());
    let mut s = C64::default();
    for n in grid.exponents() {
        s += f.at(n) * g.at(n) * q.powf(n as f64 * e);
    }
    let v0 = f.value_at_zero() * g.value_at_zero();
    if v0 != C64::default() {
        s += v0 * q.powf((grid.n_max + 1) as f64 * e) / (1.0 - q.powf(e));
    }
    Ok(s * (1.0 - q))
}

/// `<f, g> = int f conj(g) x^{2 alpha + 1} d_q x`.
pub fn inner_product(f: &LatticeFunction, g: &LatticeFunction, ctx: &QContext) -> Result<C64> {
    integrate_product(f, &g.conj(), ctx)
}
