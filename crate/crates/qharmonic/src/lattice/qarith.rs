use num_complex::Complex64 as C64;

use crate::error::{QError, Result};
use crate::lattice::QContext;

/// Number of factors in a q-shifted factorial: finite `n` or the infinite product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factors {
    Finite(usize),
    Infinite,
}

/// `(a; base)_n`, complex `a`.
pub fn q_pochhammer(a: C64, n: Factors, base: f64, ctx: &QContext) -> Result<C64> {
    match n {
        Factors::Finite(n) => {
            let mut p = C64::new(1.0, 0.0);
            let mut t = a;
            for _ in 0..n {
                p *= C64::new(1.0, 0.0) - t;
                t *= base;
            }
            Ok(p)
        }
        Factors::Infinite => {
            let mut p = C64::new(1.0, 0.0);
            let mut t = a;
            for _ in 0..ctx.max_terms {
                if t.norm() < ctx.product_tol {
                    return Ok(p);
                }
                p *= C64::new(1.0, 0.0) - t;
                t *= base;
            }
            Err(QError::NonConvergence(format!("infinite product (a;q) with a = {a} exceeded max_terms")))
        }
    }
}

/// `(a; base)_inf` for real `a`.
pub fn qpoch_inf(a: f64, base: f64, ctx: &QContext) -> Result<f64> {
    let mut p = 1.0;
    let mut t = a;
    for _ in 0..ctx.max_terms {
        if t.abs() < ctx.product_tol {
            return Ok(p);
        }
        p *= 1.0 - t;
        t *= base;
    }
    Err(QError::NonConvergence(format!("infinite product (a;q) with a = {a} exceeded max_terms")))
}

/// `(a; base)_n` for real `a`.
pub fn qpoch(a: f64, n: usize, base: f64) -> f64 {
    let mut p = 1.0;
    let mut t = a;
    for _ in 0..n {
        p *= 1.0 - t;
        t *= base;
    }
    p
}

/// `(a; q)_n` with the context base `q`.
pub fn q_shifted_factorial(a: C64, n: Factors, ctx: &QContext) -> Result<C64> {
    q_pochhammer(a, n, ctx.q(), ctx)
}

/// `[x]_q = (1 - q^x)/(1 - q)`.
pub fn q_bracket(x: f64, ctx: &QContext) -> f64 {
    let q = ctx.q();
    (1.0 - q.powf(x)) / (1.0 - q)
}

/// `[n]_q! = (q;q)_n / (1-q)^n`.
pub fn q_factorial(n: usize, ctx: &QContext) -> f64 {
    let q = ctx.q();
    (1..=n).map(|k| (1.0 - q.powi(k as i32)) / (1.0 - q)).product()
}

/// `Gamma_q(x)` with the context base `q`.
pub fn q_gamma(x: f64, ctx: &QContext) -> Result<f64> {
    q_gamma_base(x, ctx.q(), ctx)
}

/// `Gamma_b(x) = (b;b)_inf / (b^x;b)_inf (1-b)^{1-x}` for an arbitrary base `b`.
pub fn q_gamma_base(x: f64, b: f64, ctx: &QContext) -> Result<f64> {
    if x <= 0.0 && x == x.round() {
        return Err(QError::Pole(x));
    }
    let num = qpoch_inf(b, b, ctx)?;
    let den = qpoch_inf(b.powf(x), b, ctx)?;
    Ok(num / den * (1.0 - b).powf(1.0 - x))
}

/// Ratio `(a;b)_inf / (c;b)_inf` that stays finite when both products vanish:
/// if `c = a b^m` for a nonnegative integer `m`, the ratio is `(a;b)_m`.
pub fn qpoch_ratio(a: f64, c: f64, b: f64, ctx: &QContext) -> Result<f64> {
    if a != 0.0 {
        let m = (c / a).ln() / b.ln();
        let mr = m.round();
        if mr >= 0.0 && (m - mr).abs() < 1e-12 && mr < 1e6 {
            return Ok(qpoch(a, mr as usize, b));
        }
    }
    Ok(qpoch_inf(a, b, ctx)? / qpoch_inf(c, b, ctx)?)
}

/// Gaussian binomial `[n; p]_b`; zero outside `0 <= p <= n`.
pub fn q_binomial(n: i64, p: i64, base: f64) -> f64 {
    if p < 0 || p > n || n < 0 {
        return 0.0;
    }
    let (n, p) = (n as usize, p as usize);
    let p = p.min(n - p);
    let mut r = 1.0;
    for i in 0..p {
        r *= (1.0 - base.powi((n - i) as i32)) / (1.0 - base.powi((i + 1) as i32));
    }
    r
}
