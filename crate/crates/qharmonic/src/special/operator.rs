use num_complex::Complex64 as C64;

use crate::lattice::{LatticeFunction, QContext};

/// `Delta_{alpha,q} f(z) = [q^2 (f(z/q) - f(z)) - q^{2a+2} (f(z) - f(qz))] / ((1-q)^2 z^2)`,
/// the expanded form of `q^{2a+1} D_q^2 f(z/q) + (1-q^{2a+1}) / ((1-q) z/q) D_q f(z/q)`.
///
/// Differences are taken from the stored offsets. The outermost point sees the zero
/// extension and is an approximation. Toward the origin `f(x) = f(0) + c x^2 + O(x^4)` is
/// assumed: `c` comes from the innermost offset and gives both the step past the
/// innermost point and the limit at the origin.
pub fn q_bessel_operator(f: &LatticeFunction, ctx: &QContext) -> LatticeFunction {
    let q = ctx.q();
    let s = q.powf(2.0 * ctx.alpha() + 1.0);
    let h2 = (1.0 - q).powi(2);
    let g = f.grid();
    // past the innermost point the offset continues as c x^2 rather than as 0
    let inner = |k: i64| if k == g.n_max { f.offset_at(k) * (1.0 - q * q) } else { f.diff(k, k + 1) };
    let at = |k: i64| -> C64 {
        let z2 = ctx.point(k).powi(2);
        (f.diff(k - 1, k) * (q * q) - inner(k) * (q * s)) / (h2 * z2)
    };
    let x2 = ctx.point(g.n_max).powi(2);
    let c2 = f.offset_at(g.n_max) / x2;
    let v0 = c2 * ((1.0 - q * q) * (1.0 - q * s) / h2);
    let offsets: Vec<C64> = g.exponents().map(|k| at(k) - v0).collect();
    let values: Vec<C64> = g.exponents().map(at).collect();
    LatticeFunction::from_parts(g, values, offsets, v0).expect("length matches grid").with_role(f.role())
}

/// `Delta_q`: the `alpha = -1/2` instance, `D_q^2 f(z/q)`.
pub fn q_laplacian_even(f: &LatticeFunction, ctx: &QContext) -> LatticeFunction {
    q_bessel_operator(f, &ctx.cosine())
}
