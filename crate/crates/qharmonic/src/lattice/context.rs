use crate::error::{QError, Result};
use crate::lattice::qarith;

/// Global parameters `(q, alpha)` plus the truncation policy shared by every series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QContext {
    q: f64,
    alpha: f64,
    pub tail_tol: f64,
    pub product_tol: f64,
    pub max_terms: usize,
    strict_lattice_q: bool,
    c_alpha: f64,
    /// `c_{-1/2,q}`, carried over to [`QContext::cosine`].
    c_half: f64,
}

pub const DEFAULT_TAIL_TOL: f64 = 1e-12;
pub const DEFAULT_PRODUCT_TOL: f64 = 1e-17;
pub const DEFAULT_MAX_TERMS: usize = 4096;

impl QContext {
    pub fn new(q: f64, alpha: f64) -> Result<Self> {
        Self::build(q, alpha, DEFAULT_TAIL_TOL, DEFAULT_PRODUCT_TOL, DEFAULT_MAX_TERMS, false)
    }

    pub fn build(
        q: f64,
        alpha: f64,
        tail_tol: f64,
        product_tol: f64,
        max_terms: usize,
        strict_lattice_q: bool,
    ) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(QError::InvalidParameter(format!("q must lie in (0,1), got {q}")));
        }
        if !(alpha > -0.5) || !alpha.is_finite() {
            return Err(QError::InvalidParameter(format!("alpha must exceed -1/2, got {alpha}")));
        }
        if !(tail_tol > 0.0) || !(product_tol > 0.0) {
            return Err(QError::InvalidParameter("tolerances must be positive".into()));
        }
        if max_terms < 64 {
            return Err(QError::InvalidParameter(format!("max_terms must be at least 64, got {max_terms}")));
        }
        let mut ctx = QContext { q, alpha, tail_tol, product_tol, max_terms, strict_lattice_q, c_alpha: 0.0, c_half: 0.0 };
        if strict_lattice_q && !ctx.is_lattice_compatible() {
            return Err(QError::InvalidParameter(format!(
                "strict_lattice_q: log(1-q)/log(q) = {} is not an integer",
                ctx.lattice_ratio()
            )));
        }
        ctx.c_alpha = normalizer(alpha, &ctx)?;
        ctx.c_half = normalizer(-0.5, &ctx)?;
        Ok(ctx)
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn strict_lattice_q(&self) -> bool {
        self.strict_lattice_q
    }

    pub fn with_alpha(&self, alpha: f64) -> Result<Self> {
        Self::build(self.q, alpha, self.tail_tol, self.product_tol, self.max_terms, self.strict_lattice_q)
    }

    pub fn with_tail_tol(mut self, tol: f64) -> Result<Self> {
        if !(tol > 0.0) {
            return Err(QError::InvalidParameter("tail_tol must be positive".into()));
        }
        self.tail_tol = tol;
        Ok(self)
    }

    /// The `alpha = -1/2` context driving the q-cosine transform, even translation and
    /// the classical wavelet transform.
    pub fn cosine(&self) -> Self {
        QContext { alpha: -0.5, c_alpha: self.c_half, ..*self }
    }

    pub fn is_cosine(&self) -> bool {
        self.alpha == -0.5
    }

    /// `log(1-q)/log(q)`.
    pub fn lattice_ratio(&self) -> f64 {
        (1.0 - self.q).ln() / self.q.ln()
    }

    /// True when `log(1-q)/log(q)` is an integer (within 1e-12 relative slack),
    /// i.e. `1-q` is itself a lattice point. The decay of the normalized q-Bessel
    /// function along the lattice depends on it.
    pub fn is_lattice_compatible(&self) -> bool {
        let r = self.lattice_ratio();
        (r - r.round()).abs() <= 1e-12 * r.abs().max(1.0)
    }

    /// `q^n` for an integer exponent.
    pub fn point(&self, n: i64) -> f64 {
        self.q.powi(n as i32)
    }

    /// Exponent `n` with `q^n == x`, if `x` sits on the lattice.
    pub fn exponent_of(&self, x: f64) -> Option<i64> {
        if !(x > 0.0) || !x.is_finite() {
            return None;
        }
        let n = (x.ln() / self.q.ln()).round();
        if n.abs() > 1e6 {
            return None;
        }
        let n = n as i64;
        let back = self.point(n);
        if ((back - x) / x).abs() < 1e-9 {
            Some(n)
        } else {
            None
        }
    }

    /// `q^2`, the base of every q-Bessel series.
    pub fn base(&self) -> f64 {
        self.q * self.q
    }

    /// `c_{alpha,q} = (1+1/q)^{-alpha} / Gamma_{q^2}(alpha+1)`.
    pub fn c_alpha(&self) -> f64 {
        self.c_alpha
    }

    /// Jackson weight exponent `2 alpha + 2`: `x^{2 alpha + 1} d_q x` at `x = q^n` is `(1-q) q^{n(2alpha+2)}`.
    pub fn weight_power(&self) -> f64 {
        2.0 * self.alpha + 2.0
    }

    /// `(1-q) q^{n (2 alpha + 2)}`.
    pub fn weight(&self, n: i64) -> f64 {
        (1.0 - self.q) * self.q.powf(n as f64 * self.weight_power())
    }
}

fn normalizer(alpha: f64, ctx: &QContext) -> Result<f64> {
    let q = ctx.q;
    Ok((1.0 + 1.0 / q).powf(-alpha) / qarith::q_gamma_base(alpha + 1.0, q * q, ctx)?)
}
