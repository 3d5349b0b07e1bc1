use num_complex::Complex64 as C64;

use crate::error::{QError, Result};
use crate::lattice::qarith::qpoch;
use crate::lattice::{LatticeFunction, LatticeGrid, QContext};

/// Outer terms whose coefficient mass falls below this are dropped.
const OUTER_EPS: f64 = 1e-18;

/// `U_k(n) = q^{n^2} sum_p [n;p]_{q^2} [n;l]_{q^2} q^{p^2 + l^2 - (2n-1)(n+k) + 2 alpha l}`,
/// `l = n + k - p`, for `-n <= k <= n` (zero otherwise).
///
/// These are the coefficients of `f(q^k y)` in `(1-q)^{2n} y^{2n} q^{-n} Delta^n f(y)` up to
/// the sign `(-1)^{n-k}`, obtained by expanding the q-Bessel operator.
pub fn translation_coefficient(n: i64, k: i64, ctx: &QContext) -> f64 {
    if n < 0 || k < -n || k > n {
        return 0.0;
    }
    let q = ctx.q();
    let b = q * q;
    let a = ctx.alpha();
    let mut s = 0.0;
    for p in 0..=n {
        let l = n + k - p;
        if l < 0 || l > n {
            continue;
        }
        let e = (p * p + l * l - (2 * n - 1) * (n + k)) as f64 + 2.0 * a * l as f64;
        s += crate::lattice::q_binomial(n, p, b) * crate::lattice::q_binomial(n, l, b) * q.powf(e);
    }
    q.powi((n * n) as i32) * s
}

/// Coefficient table of the generalized translation
///
/// `T_x f(y) = sum_n (x/y)^{2n} sum_{k=-n}^{n} (-1)^{n-k} V_k(n) f(q^k y)`,
/// `V_k(n) = q^{n^2} U_k(n) / ((q^2;q^2)_n (q^{2a+2};q^2)_n)`,
///
/// built once per `(q, alpha)` and shared read-only. The series is evaluated with the
/// larger of `x`, `y` as the base point (`T_x f(y) = T_y f(x)`), so `(x/y)^{2n} <= 1`.
#[derive(Debug, Clone)]
pub struct TranslationKernel {
    ctx: QContext,
    rows: Vec<Vec<f64>>,
    mass: Vec<f64>,
}

impl TranslationKernel {
    pub fn new(ctx: &QContext) -> Result<Self> {
        let q = ctx.q();
        let b = q * q;
        let a = ctx.alpha();
        let lnq = q.ln();
        let cap = (ctx.max_terms / 4).max(64);
        let mut rows: Vec<Vec<f64>> = vec![vec![1.0]];
        let mut mass = vec![1.0];
        // binomial row [n; p]_{q^2}, updated by the q-Pascal rule
        let mut bin = vec![1.0];
        let mut n = 0usize;
        loop {
            n += 1;
            if n > cap {
                return Err(QError::NonConvergence(format!(
                    "translation coefficients still above {OUTER_EPS:e} after {cap} outer terms"
                )));
            }
            let mut next = vec![1.0; n + 1];
            for p in 1..n {
                next[p] = bin[p - 1] + b.powi(p as i32) * bin[p];
            }
            bin = next;
            let ni = n as i64;
            let norm = qpoch(b, n, b) * qpoch(q.powf(2.0 * a + 2.0), n, b);
            let mut row = vec![0.0; 2 * n + 1];
            for (idx, v) in row.iter_mut().enumerate() {
                let k = idx as i64 - ni;
                let mut s = 0.0;
                for p in 0..=ni {
                    let l = ni + k - p;
                    if l < 0 || l > ni {
                        continue;
                    }
                    let e = (2 * ni * ni + p * p + l * l - (2 * ni - 1) * (ni + k)) as f64 + 2.0 * a * l as f64;
                    s += bin[p as usize] * bin[l as usize] * (e * lnq).exp();
                }
                *v = s / norm;
            }
            let m: f64 = row.iter().sum();
            rows.push(row);
            mass.push(m);
            if m < OUTER_EPS && n > 2 {
                break;
            }
        }
        Ok(TranslationKernel { ctx: *ctx, rows, mass })
    }

    pub fn context(&self) -> &QContext {
        &self.ctx
    }

    /// Number of outer terms kept.
    pub fn depth(&self) -> usize {
        self.rows.len()
    }

    /// `V_k(n)` from the table.
    pub fn coefficient(&self, n: usize, k: i64) -> f64 {
        let ni = n as i64;
        if n >= self.rows.len() || k < -ni || k > ni {
            return 0.0;
        }
        self.rows[n][(k + ni) as usize]
    }

    /// `T_{q^a} f(q^b)`; `None` stands for the origin.
    pub fn eval(&self, f: &LatticeFunction, a: Option<i64>, b: Option<i64>) -> C64 {
        let (a, b) = match (a, b) {
            (None, None) => return f.value_at_zero(),
            (None, Some(b)) => return f.at(b),
            (Some(a), None) => return f.at(a),
            (Some(a), Some(b)) => (a, b),
        };
        // small point q^s, base point q^t with s >= t
        let (s, t) = if a >= b { (a, b) } else { (b, a) };
        let r2 = self.ctx.q().powi(2 * (s - t) as i32);
        let mut acc = f.at(t);
        let mut rn = 1.0;
        for n in 1..self.rows.len() {
            rn *= r2;
            if rn * self.mass[n] < OUTER_EPS {
                break;
            }
            let ni = n as i64;
            let mut inner = C64::default();
            for (idx, v) in self.rows[n].iter().enumerate() {
                let k = idx as i64 - ni;
                let sign = if (ni - k) % 2 == 0 { 1.0 } else { -1.0 };
                inner += f.at(t + k) * (sign * v);
            }
            acc += inner * rn;
        }
        acc
    }

    /// `T_x f` sampled on `out`; `x = None` is the origin (identity).
    pub fn translate_to(&self, f: &LatticeFunction, x: Option<i64>, out: LatticeGrid) -> LatticeFunction {
        let v0 = self.eval(f, x, None);
        LatticeFunction::from_exponent_fn(out, v0, |n| self.eval(f, x, Some(n))).with_role(f.role())
    }
}

/// `T_{q,x}^alpha f` on the window of `f`; `x` must be 0 or a lattice point.
pub fn translate(f: &LatticeFunction, x: f64, ctx: &QContext) -> Result<LatticeFunction> {
    if x == 0.0 {
        return Ok(f.clone());
    }
    let a = ctx
        .exponent_of(x.abs())
        .ok_or_else(|| QError::InvalidParameter(format!("translation point {x} is not on the lattice")))?;
    Ok(TranslationKernel::new(ctx)?.translate_to(f, Some(a), f.grid()))
}

/// `T_{q,b} = T_{q,b}^{-1/2}`, the even translation.
pub fn even_translate(f: &LatticeFunction, b: f64, ctx: &QContext) -> Result<LatticeFunction> {
    translate(f, b, &ctx.cosine())
}
