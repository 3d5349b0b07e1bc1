use num_complex::Complex64 as C64;

use crate::error::{QError, Result};
use crate::lattice::qarith::{q_gamma_base, qpoch_inf};
use crate::lattice::{LatticeFunction, LatticeGrid, QContext};
use crate::special::series::phi_1_1;

/// Condition number (sum of |terms| over |sum|) above which the direct series is
/// replaced by the backward recurrence.
const COND_MAX: f64 = 1e3;
/// Upper end of the cached exponent range; beyond it the direct series is cheap.
const TOP_CAP: i64 = 400;

/// Direct series of the normalized q-Bessel function:
/// `j(x) = sum_n (-1)^n q^{n(n-1)} ((1-q)x)^{2n} / ((q^2;q^2)_n (q^{2a+2};q^2)_n)`.
/// Returns `(j, 1 - j, sum |terms|)`; `1 - j` is summed without the constant term.
pub(crate) fn j_series(x: f64, alpha: f64, q: f64, max_terms: usize) -> (f64, f64, f64) {
    let q2 = q * q;
    let b = q.powf(2.0 * alpha + 2.0);
    let z = ((1.0 - q) * x).powi(2);
    let mut m = 0.0;
    let mut abs = 1.0;
    let mut t = 1.0;
    let mut q2n = 1.0; // q^{2(n-1)} at step n
    let mut prev = f64::INFINITY;
    for _ in 1..max_terms {
        t = -t * q2n * z / ((1.0 - q2n * q2) * (1.0 - b * q2n));
        q2n *= q2;
        m -= t;
        let a = t.abs();
        abs += a;
        if a <= f64::EPSILON * 1e-3 * abs && a <= prev {
            break;
        }
        if !a.is_finite() {
            break;
        }
        prev = a;
    }
    let j = 1.0 - m;
    (j, m, abs)
}

/// Normalized third Jackson q-Bessel function `j_alpha(x; q^2)` for one `(q, alpha)`.
///
/// Values on lattice points `q^k` are tabulated once: the direct series where it is
/// well conditioned, and for large arguments a backward sweep of the three-term
/// recurrence satisfied by `k -> j(q^k)`, anchored on the last well-conditioned value.
/// The sweep is only used when `log(1-q)/log(q)` is an integer; otherwise the function
/// grows along the lattice and the direct series is used throughout.
#[derive(Debug, Clone)]
pub struct BesselJ {
    q: f64,
    alpha: f64,
    max_terms: usize,
    lattice_ok: bool,
    k_lo: i64,
    k_top: i64,
    j: Vec<f64>,
    m: Vec<f64>,
}

impl BesselJ {
    pub fn new(ctx: &QContext) -> Self {
        let (q, alpha) = (ctx.q(), ctx.alpha());
        let lattice_ok = ctx.is_lattice_compatible();
        let max_terms = ctx.max_terms.max(2000);
        let k_top = TOP_CAP;
        // direct series from the top down while well conditioned
        let mut js: Vec<f64> = vec![];
        let mut ms: Vec<f64> = vec![];
        let mut k = k_top;
        loop {
            let (j, m, abs) = j_series(q.powi(k as i32), alpha, q, max_terms);
            let cond = abs / j.abs().max(f64::MIN_POSITIVE);
            let accept = if lattice_ok { cond <= COND_MAX } else { j.is_finite() && cond <= 1e12 };
            if !accept || k < -100_000 {
                break;
            }
            js.push(j);
            ms.push(m);
            k -= 1;
        }
        let k0 = k + 1; // lowest well-conditioned exponent
        if lattice_ok && !js.is_empty() {
            let tail = Self::sweep(q, alpha, k0, *js.last().unwrap());
            for v in tail {
                js.push(v);
                ms.push(1.0 - v);
            }
        }
        js.reverse();
        ms.reverse();
        let k_lo = k_top - js.len() as i64 + 1;
        BesselJ { q, alpha, max_terms, lattice_ok, k_lo, k_top, j: js, m: ms }
    }

    /// Values `j(q^k)` for `k = k0-1, k0-2, ...` down to underflow, from the anchor `j(q^{k0})`.
    fn sweep(q: f64, alpha: f64, k0: i64, anchor: f64) -> Vec<f64> {
        let ratios = Self::ratio_chain(q, alpha, q.powi(k0 as i32), Self::sweep_depth(q));
        // ratios[i] = u(k0 - i) / u(k0 - i - 1)
        let mut out = vec![];
        let mut u = anchor;
        for r in ratios {
            u /= r;
            if !(u.abs() >= 1e-305) || !u.is_finite() {
                break;
            }
            out.push(u);
        }
        out
    }

    /// Number of exponents beyond the anchor at which the backward sweep starts; the
    /// function is below 1e-300 well before that.
    fn sweep_depth(q: f64) -> usize {
        let d = (700.0 / (-q.log10())).sqrt().ceil() as usize;
        d + 12
    }

    /// Ratios `u(z_end q^{-i}) / u(z_end q^{-i-1})`, `i = 0..depth-1`, of the recessive
    /// solution, obtained by running the recurrence from `z_end q^{-depth}` toward `z_end`.
    fn ratio_chain(q: f64, alpha: f64, z_end: f64, depth: usize) -> Vec<f64> {
        let s = q.powf(2.0 * alpha + 1.0);
        let h = 1.0 - q;
        let mut inv_r = 0.0; // u(z/q) / u(z)
        let mut rs = vec![0.0; depth];
        // z runs over z_end q^{-depth}, ..., z_end q^{-1}; each step yields u(qz)/u(z)
        for i in (0..depth).rev() {
            let z = z_end * q.powi(-(i as i32) - 1);
            let rho = 1.0 + (q / s) * (1.0 - inv_r) - h * h * z * z / (q * s);
            // rho = u(qz)/u(z) = u(z_end q^{-i}) / u(z_end q^{-i-1})
            rs[i] = rho;
            inv_r = 1.0 / rho;
        }
        rs
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// Lowest tabulated exponent; for lattice-compatible `q` the function is below
    /// 1e-305 in magnitude beyond it (treated as zero).
    pub fn k_lo(&self) -> i64 {
        self.k_lo
    }

    /// `j(q^k)`.
    #[inline]
    pub fn at_exp(&self, k: i64) -> f64 {
        if k >= self.k_lo && k <= self.k_top {
            self.j[(k - self.k_lo) as usize]
        } else if k > self.k_top {
            j_series(self.q.powi(k as i32), self.alpha, self.q, self.max_terms).0
        } else if self.lattice_ok {
            0.0
        } else {
            f64::NAN
        }
    }

    /// `1 - j(q^k)` without cancellation for small arguments.
    #[inline]
    pub fn one_minus_at_exp(&self, k: i64) -> f64 {
        if k >= self.k_lo && k <= self.k_top {
            self.m[(k - self.k_lo) as usize]
        } else if k > self.k_top {
            j_series(self.q.powi(k as i32), self.alpha, self.q, self.max_terms).1
        } else if self.lattice_ok {
            1.0
        } else {
            f64::NAN
        }
    }

    /// `j(x)` at an arbitrary real argument (even in `x`).
    pub fn eval(&self, x: f64) -> Result<f64> {
        Ok(self.eval_pair(x)?.0)
    }

    /// `(j(x), 1 - j(x))`.
    pub fn eval_pair(&self, x: f64) -> Result<(f64, f64)> {
        let x = x.abs();
        if x == 0.0 {
            return Ok((1.0, 0.0));
        }
        if !x.is_finite() {
            return Err(QError::InvalidParameter(format!("j evaluated at {x}")));
        }
        let kr = x.ln() / self.q.ln();
        if (kr - kr.round()).abs() < 1e-13 && kr.abs() < 1e6 {
            let k = kr.round() as i64;
            if (self.q.powi(k as i32) - x).abs() <= 1e-15 * x {
                return Ok((self.at_exp(k), self.one_minus_at_exp(k)));
            }
        }
        let (j, m, abs) = j_series(x, self.alpha, self.q, self.max_terms);
        let cond = abs / j.abs().max(f64::MIN_POSITIVE);
        if cond <= COND_MAX {
            return Ok((j, m));
        }
        if self.lattice_ok {
            // walk toward the origin until well conditioned, then run the recurrence out to x
            let mut steps = 0usize;
            let mut z = x;
            let anchor = loop {
                z *= self.q;
                steps += 1;
                let (jz, _, az) = j_series(z, self.alpha, self.q, self.max_terms);
                if az / jz.abs().max(f64::MIN_POSITIVE) <= COND_MAX {
                    break jz;
                }
                if steps > 100_000 {
                    return Err(QError::NonConvergence(format!("no well-conditioned anchor for j({x})")));
                }
            };
            let depth = steps + Self::sweep_depth(self.q);
            let rs = Self::ratio_chain(self.q, self.alpha, z, depth);
            let mut u = anchor;
            for r in rs.iter().take(steps) {
                u /= r;
            }
            if !u.is_finite() {
                u = 0.0;
            }
            return Ok((u, 1.0 - u));
        }
        if cond > 1e12 {
            return Err(QError::NonConvergence(format!(
                "j({x}) loses all precision in f64 (condition {cond:.1e}) for q off the lattice condition"
            )));
        }
        Ok((j, m))
    }
}

/// `J_alpha^{(3)}(x; q^2) = x^alpha (q^{2a+2};q^2)_inf / (q^2;q^2)_inf 1phi1(0; q^{2a+2}; q^2, q^2 x^2)`.
pub fn j_bessel_third(x: f64, ctx: &QContext) -> Result<f64> {
    let q = ctx.q();
    let q2 = q * q;
    let b = q.powf(2.0 * ctx.alpha() + 2.0);
    let pref = x.powf(ctx.alpha()) * qpoch_inf(b, q2, ctx)? / qpoch_inf(q2, q2, ctx)?;
    let s = phi_1_1(C64::default(), C64::new(b, 0.0), C64::new(q2 * x * x, 0.0), q2, ctx)?;
    Ok(pref * s.re)
}

/// Normalized q-Bessel function `j_alpha(x; q^2)`, with `j(0) = 1`.
pub fn j_normalized(x: f64, ctx: &QContext) -> Result<f64> {
    BesselJ::new(ctx).eval(x)
}

/// `cos(x; q^2) = j_{-1/2}(x; q^2)`.
pub fn q_cosine(x: f64, ctx: &QContext) -> Result<f64> {
    BesselJ::new(&ctx.cosine()).eval(x)
}

/// Sample `x -> j(lambda x)` on a window, `lambda = q^l`, with accurate offsets from 1.
pub fn sample_j(grid: LatticeGrid, l: i64, ctx: &QContext) -> LatticeFunction {
    let bj = BesselJ::new(ctx);
    let values = grid.exponents().map(|n| C64::new(bj.at_exp(n + l), 0.0)).collect();
    let offsets = grid.exponents().map(|n| C64::new(-bj.one_minus_at_exp(n + l), 0.0)).collect();
    LatticeFunction::from_parts(grid, values, offsets, C64::new(1.0, 0.0)).expect("length matches grid")
}

/// First bound: `|j(x)| <= 1/(q;q^2)_inf^2`.
pub fn estim_bound_1(ctx: &QContext) -> Result<f64> {
    let q = ctx.q();
    Ok(1.0 / qpoch_inf(q, q * q, ctx)?.powi(2))
}

/// Second bound: `C` for `x <= q/(1-q)`, else `C q^{(log((1-q)x/q)/log q)^2}`, with
/// `C = (-q^2;q^2)_inf (-q^{2a+2};q^2)_inf / (q^{2a+2};q^2)_inf`.
pub fn estim_bound_2(x: f64, ctx: &QContext) -> Result<f64> {
    let q = ctx.q();
    let q2 = q * q;
    let b = q.powf(2.0 * ctx.alpha() + 2.0);
    let c = qpoch_inf(-q2, q2, ctx)? * qpoch_inf(-b, q2, ctx)? / qpoch_inf(b, q2, ctx)?;
    if x <= q / (1.0 - q) {
        Ok(c)
    } else {
        let e = ((1.0 - q) * x / q).ln() / q.ln();
        Ok(c * q.powf(e * e))
    }
}

/// Constant `(1-q^2)^alpha Gamma_{q^2}(alpha+1)` relating `j` and `J^{(3)}`.
pub fn normalization_constant(ctx: &QContext) -> Result<f64> {
    let q = ctx.q();
    Ok((1.0 - q * q).powf(ctx.alpha()) * q_gamma_base(ctx.alpha() + 1.0, q * q, ctx)?)
}
