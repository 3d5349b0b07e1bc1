use num_complex::Complex64 as C64;

use crate::error::{QError, Result};
use crate::lattice::QContext;

/// `1phi1(a; b; base, z) = sum_n (a;p)_n / ((p;p)_n (b;p)_n) (-1)^n p^{n(n-1)/2} z^n`, `p = base`.
///
/// Terms decay faster than geometrically, so the sum runs to machine precision.
pub fn phi_1_1(a: C64, b: C64, z: C64, base: f64, ctx: &QContext) -> Result<C64> {
    let one = C64::new(1.0, 0.0);
    let mut sum = one;
    let mut t = one;
    let mut pn = 1.0; // base^n
    let mut prev = f64::INFINITY;
    for n in 0..ctx.max_terms {
        let den_b = one - b * pn;
        if den_b.norm() < 1e-300 {
            return Err(QError::DenominatorPole(n));
        }
        t = t * (one - a * pn) / ((1.0 - pn * base) * den_b) * (-pn) * z;
        pn *= base;
        sum += t;
        let m = t.norm();
        if m <= f64::EPSILON * 1e-2 * sum.norm() && m <= prev {
            return Ok(sum);
        }
        if m == 0.0 {
            return Ok(sum);
        }
        prev = m;
    }
    Err(QError::NonConvergence("1phi1 series exceeded max_terms".into()))
}
