//! Identity checks with residuals and tolerances, grouped in suites.
//!
//! Every check computes a residual and compares it with a fixed tolerance. A check whose
//! computation fails reports a NaN residual and the error text.

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fractional::*;
use crate::harmonic::*;
use crate::lattice::calculus::{rel_l2_error_on, rel_sup_error_on};
use crate::lattice::qarith::{qpoch, qpoch_inf};
use crate::lattice::*;
use crate::special::*;
use crate::wavelet::family::{dilatation_exp, dilate_exp};
use crate::wavelet::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Core,
    Special,
    Harmonic,
    Wavelet,
    Fractional,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Core, Suite::Special, Suite::Harmonic, Suite::Wavelet, Suite::Fractional];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Core => "core",
            Suite::Special => "special",
            Suite::Harmonic => "harmonic",
            Suite::Wavelet => "wavelet",
            Suite::Fractional => "fractional",
        }
    }

    /// `"all"` expands to every suite.
    pub fn parse_list(s: &str) -> Option<Vec<Suite>> {
        match s {
            "all" => Some(Self::ALL.to_vec()),
            _ => Self::ALL.iter().find(|x| x.name() == s).map(|x| vec![*x]),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub ctx: QContext,
    pub grid: LatticeGrid,
    pub seed: u64,
    pub moment_depth: usize,
}

impl VerifyConfig {
    pub fn new(ctx: QContext) -> Self {
        VerifyConfig { ctx, grid: LatticeGrid::new(-10, 30).expect("valid window"), seed: 1, moment_depth: 3 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub suite: Suite,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub q: f64,
    pub alpha: f64,
    pub warnings: Vec<String>,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn get(&self, id: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_table(&self) -> String {
        let mut s = format!("q = {}, alpha = {}\n", self.q, self.alpha);
        for w in &self.warnings {
            s += &format!("warning: {w}\n");
        }
        let width = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(10);
        s += &format!("{:<width$}  {:>12}  {:>9}  result\n", "identity", "residual", "tolerance");
        for c in &self.checks {
            s += &format!(
                "{:<width$}  {:>12.3e}  {:>9.1e}  {}{}\n",
                c.id,
                c.residual,
                c.tolerance,
                if c.pass { "pass" } else { "FAIL" },
                c.note.as_ref().map(|n| format!("  ({n})")).unwrap_or_default()
            );
        }
        let failed = self.failures().count();
        s += &format!("{} checks, {} failed\n", self.checks.len(), failed);
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

type Probe = Box<dyn Fn(&VerifyConfig) -> Result<f64> + Send + Sync>;

struct Check {
    id: &'static str,
    suite: Suite,
    tolerance: f64,
    probe: Probe,
}

fn check(id: &'static str, suite: Suite, tolerance: f64, probe: impl Fn(&VerifyConfig) -> Result<f64> + Send + Sync + 'static) -> Check {
    Check { id, suite, tolerance, probe: Box::new(probe) }
}

/// Run the given suites. Checks run in parallel; the report is sorted by suite and id.
pub fn run(suites: &[Suite], cfg: &VerifyConfig) -> VerifyReport {
    let checks: Vec<Check> = catalogue().into_iter().filter(|c| suites.contains(&c.suite)).collect();
    let mut results: Vec<CheckResult> = checks
        .par_iter()
        .map(|c| {
            let (residual, note) = match (c.probe)(cfg) {
                Ok(r) => (r, None),
                Err(e) => (f64::NAN, Some(format!("{}: {e}", e.kind()))),
            };
            CheckResult {
                id: c.id.to_string(),
                suite: c.suite,
                residual,
                tolerance: c.tolerance,
                pass: residual.is_finite() && residual <= c.tolerance,
                note,
            }
        })
        .collect();
    results.sort_by(|a, b| (a.suite, &a.id).cmp(&(b.suite, &b.id)));
    let mut warnings = vec![];
    if !cfg.ctx.is_lattice_compatible() {
        warnings.push(format!(
            "log(1-q)/log(q) = {:.6} is not an integer; orthogonality and the Bessel bounds need it",
            cfg.ctx.lattice_ratio()
        ));
    }
    VerifyReport { q: cfg.ctx.q(), alpha: cfg.ctx.alpha(), warnings, checks: results }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn crel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
}

fn l2(f: &LatticeFunction, r: &LatticeFunction, ctx: &QContext) -> f64 {
    rel_l2_error(f, r, ctx)
}

/// Seeded windowed signals: bumps away from the origin.
fn signals(cfg: &VerifyConfig, n: u64) -> Result<Vec<LatticeFunction>> {
    (0..n).map(|k| make_test_function(TestFunctionClass::S_ZERO, cfg.seed + k, cfg.grid, &cfg.ctx)).collect()
}

fn class(tag: TestClassTag, cfg: &VerifyConfig) -> TestFunctionClass {
    TestFunctionClass { tag, moment_depth: cfg.moment_depth }
}

fn s_alpha(cfg: &VerifyConfig, k: u64) -> Result<LatticeFunction> {
    make_test_function(class(TestClassTag::SStarQAlpha, cfg), cfg.seed + k, cfg.grid, &cfg.ctx)
}

fn s_half(cfg: &VerifyConfig, k: u64) -> Result<LatticeFunction> {
    make_test_function(class(TestClassTag::SStarQMinusHalf, cfg), cfg.seed + k, cfg.grid, &cfg.ctx.cosine())
}

fn s_star(cfg: &VerifyConfig, k: u64) -> Result<LatticeFunction> {
    make_test_function(class(TestClassTag::SStarQ, cfg), cfg.seed + k, cfg.grid, &cfg.ctx)
}

/// Positions of the acceptance points `{q^2, q, 1, q^-1, q^-2}`.
const ORT_POINTS: [i64; 5] = [2, 1, 0, -1, -2];

fn catalogue() -> Vec<Check> {
    use Suite::*;
    vec![
        // ---- core
        check("core.gamma_recurrence", Core, 1e-10, |cfg| {
            let mut worst: f64 = 0.0;
            for k in 0..40 {
                let x = 0.5 + 0.25 * k as f64;
                let lhs = q_gamma(x + 1.0, &cfg.ctx)?;
                let rhs = q_bracket(x, &cfg.ctx) * q_gamma(x, &cfg.ctx)?;
                worst = worst.max(rel(lhs, rhs));
            }
            Ok(worst)
        }),
        check("core.shifted_factorial_step", Core, 1e-14, |cfg| {
            let q = cfg.ctx.q();
            let mut worst: f64 = 0.0;
            for &a in &[0.3, -0.7, 1.9] {
                for n in 0..30 {
                    let lhs = qpoch(a, n + 1, q);
                    let rhs = qpoch(a, n, q) * (1.0 - a * q.powi(n as i32));
                    worst = worst.max((lhs - rhs).abs() / rhs.abs().max(1e-300));
                }
            }
            Ok(worst)
        }),
        check("core.jackson_window_exactness", Core, 1e-14, |cfg| {
            let ctx = &cfg.ctx;
            let a = ctx.point(-2);
            let f = |x: f64| if x <= a * (1.0 + 1e-12) { C64::new(x * x * (1.0 + x).cos(), 0.0) } else { C64::default() };
            let full = jackson_integral_0_to_inf(f, &cfg.grid, ctx)?;
            let part = jackson_integral_0_to_a(f, a, ctx)?;
            Ok(crel(full, part))
        }),
        check("core.interval_additivity", Core, 1e-14, |cfg| {
            let ctx = &cfg.ctx;
            let f = |x: f64| C64::new((-x).exp() * x.sqrt(), 0.0);
            let (a, b) = (ctx.point(3), ctx.point(-1));
            let ab = jackson_integral_a_to_b(f, a, b, ctx)?;
            let d = jackson_integral_0_to_a(f, b, ctx)? - jackson_integral_0_to_a(f, a, ctx)?;
            Ok(crel(ab, d))
        }),
        check("core.derivative_linearity", Core, 1e-13, |cfg| {
            let ctx = &cfg.ctx;
            let fs = signals(cfg, 2)?;
            let (a, b) = (C64::new(0.7, -0.2), C64::new(-1.3, 0.4));
            let lhs = q_derivative(&LatticeFunction::lin_comb(a, &fs[0], b, &fs[1]), ctx);
            let rhs = LatticeFunction::lin_comb(a, &q_derivative(&fs[0], ctx), b, &q_derivative(&fs[1], ctx));
            Ok(rel_sup_error_on(&lhs, &rhs, cfg.grid.exponents()))
        }),
        // ---- special
        check("special.eigenfunction", Special, 1e-8, |cfg| {
            let ctx = &cfg.ctx;
            let mut worst: f64 = 0.0;
            for l in [2i64, 1, 0, -1] {
                let j = sample_j(cfg.grid, l, ctx);
                let dj = q_bessel_operator(&j, ctx);
                let lam2 = ctx.point(l).powi(2);
                let scale = j.max_abs();
                for n in cfg.grid.interior(1) {
                    worst = worst.max((dj.at(n) + j.at(n) * lam2).norm() / scale);
                }
            }
            Ok(worst)
        }),
        check("special.bessel_bound_1", Special, 1e-12, |cfg| {
            let ctx = &cfg.ctx;
            let b = estim_bound_1(ctx)?;
            let mut worst = f64::NEG_INFINITY;
            for n in cfg.grid.exponents() {
                worst = worst.max(j_normalized(ctx.point(n), ctx)?.abs() / b - 1.0);
            }
            Ok(worst.max(0.0))
        }),
        check("special.bessel_bound_2", Special, 1e-12, |cfg| {
            let ctx = &cfg.ctx;
            let mut worst = f64::NEG_INFINITY;
            for n in cfg.grid.exponents() {
                let x = ctx.point(n);
                worst = worst.max(j_normalized(x, ctx)?.abs() / estim_bound_2(x, ctx)? - 1.0);
            }
            Ok(worst.max(0.0))
        }),
        check("special.gaussian_fourier", Special, 1e-7, |cfg| {
            let ctx = &cfg.ctx;
            let g = gaussian(cfg.grid, ctx)?;
            let fg = bessel_fourier(&g, ctx)?;
            let k = ctx.q().powf(4.0 * ctx.alpha() + 2.0);
            let want = sample_q_exponential(cfg.grid, 0, ctx).scale_real(k);
            Ok(rel_sup_error_on(&fg, &want, cfg.grid.exponents()))
        }),
        check("special.gaussian_admissibility_bound", Special, 0.0, |cfg| {
            let ctx = &cfg.ctx;
            let w = WaveletDescriptor::gaussian(cfg.grid, ctx)?;
            let bound = ctx.q().powf(4.0 * ctx.alpha()) / (1.0 + ctx.q());
            // zero when 0 < C_g <= bound
            Ok(if w.c_g > 0.0 { (w.c_g / bound - 1.0).max(0.0) } else { 1.0 })
        }),
        // ---- harmonic
        check("harmonic.orthogonality_diagonal", Harmonic, 1e-6, |cfg| {
            let c = orthogonality_constant(&cfg.ctx)?;
            let mut worst: f64 = 0.0;
            for i in ORT_POINTS {
                worst = worst.max(rel(orthogonality_check(i, i, &cfg.ctx)?.re, c));
            }
            Ok(worst)
        }),
        check("harmonic.orthogonality_off_diagonal", Harmonic, 1e-6, |cfg| {
            let c = orthogonality_constant(&cfg.ctx)?;
            let mut worst: f64 = 0.0;
            for i in ORT_POINTS {
                for k in ORT_POINTS {
                    if i != k {
                        worst = worst.max(orthogonality_check(i, k, &cfg.ctx)?.norm() / c);
                    }
                }
            }
            Ok(worst)
        }),
        check("harmonic.plancherel_scaling", Harmonic, 1e-7, |cfg| {
            let ctx = &cfg.ctx;
            let k = ctx.q().powf(2.0 * ctx.alpha() + 1.0);
            let mut worst: f64 = 0.0;
            for f in signals(cfg, 10)? {
                let ff = bessel_fourier(&f, ctx)?;
                worst = worst.max(rel(lp_norm(&ff, 2.0, ctx)?, k * lp_norm(&f, 2.0, ctx)?));
            }
            Ok(worst)
        }),
        check("harmonic.fourier_involution", Harmonic, 1e-7, |cfg| {
            let ctx = &cfg.ctx;
            let mut worst: f64 = 0.0;
            for f in signals(cfg, 10)? {
                let back = bessel_fourier_inverse(&bessel_fourier(&f, ctx)?, ctx)?;
                worst = worst.max(l2(&back, &f, ctx));
            }
            Ok(worst)
        }),
        check("harmonic.fourier_twice", Harmonic, 1e-7, |cfg| {
            let ctx = &cfg.ctx;
            let k = ctx.q().powf(4.0 * ctx.alpha() + 2.0);
            let mut worst: f64 = 0.0;
            for f in signals(cfg, 10)? {
                let ff = bessel_fourier(&bessel_fourier(&f, ctx)?, ctx)?;
                worst = worst.max(l2(&ff, &f.scale_real(k), ctx));
            }
            Ok(worst)
        }),
        check("harmonic.fourier_sup_bound", Harmonic, 0.0, |cfg| {
            let ctx = &cfg.ctx;
            let b = ctx.c_alpha() / qpoch_inf(ctx.q(), ctx.q() * ctx.q(), ctx)?.powi(2);
            let mut worst: f64 = 0.0;
            for f in signals(cfg, 3)? {
                let ff = bessel_fourier(&f, ctx)?;
                worst = worst.max((ff.max_abs() / (b * lp_norm(&f, 1.0, ctx)?) - 1.0).max(0.0));
            }
            Ok(worst)
        }),
        check("harmonic.translation_of_one", Harmonic, 1e-8, |cfg| {
            let ctx = &cfg.ctx;
            let k = TranslationKernel::new(ctx)?;
            let one = LatticeFunction::constant(cfg.grid, C64::new(1.0, 0.0));
            let mut worst: f64 = 0.0;
            for x in [-3i64, 0, 2, 5] {
                for y in cfg.grid.interior(2) {
                    worst = worst.max((k.eval(&one, Some(x), Some(y)) - 1.0).norm());
                }
            }
            Ok(worst)
        }),
        check("harmonic.product_formula", Harmonic, 1e-7, |cfg| {
            let ctx = &cfg.ctx;
            let k = TranslationKernel::new(ctx)?;
            let bj = BesselJ::new(ctx);
            let mut worst: f64 = 0.0;
            for l in [1i64, -1] {
                let jt = sample_j(cfg.grid, l, ctx);
                for x in [-3i64, 0, 2, 5] {
                    for y in cfg.grid.interior(2) {
                        let want = bj.at_exp(x + l) * bj.at_exp(y + l);
                        worst = worst.max((k.eval(&jt, Some(x), Some(y)).re - want).abs());
                    }
                }
            }
            Ok(worst)
        }),
        check("harmonic.translation_self_adjoint", Harmonic, 1e-8, |cfg| {
            let ctx = &cfg.ctx;
            let k = TranslationKernel::new(ctx)?;
            let fs = signals(cfg, 2)?;
            let mut worst: f64 = 0.0;
            for x in [-4i64, -1, 3] {
                let lhs = integrate_product(&k.translate_to(&fs[0], Some(x), cfg.grid), &fs[1], ctx)?;
                let rhs = integrate_product(&fs[0], &k.translate_to(&fs[1], Some(x), cfg.grid), ctx)?;
                worst = worst.max(crel(lhs, rhs));
            }
            Ok(worst)
        }),
        check("harmonic.translation_diagonalization", Harmonic, 1e-7, |cfg| {
            let ctx = &cfg.ctx;
            let k = TranslationKernel::new(ctx)?;
            let bj = BesselJ::new(ctx);
            let f = &signals(cfg, 1)?[0];
            let ff = bessel_fourier(f, ctx)?;
            let mut worst: f64 = 0.0;
            for x in [-2i64, 1, 4] {
                let t = bessel_fourier(&k.translate_to(f, Some(x), cfg.grid), ctx)?;
                let want = LatticeFunction::from_exponent_fn(cfg.grid, ff.value_at_zero(), |m| ff.at(m) * bj.at_exp(m + x));
                worst = worst.max(l2(&t, &want, ctx));
            }
            Ok(worst)
        }),
        check("harmonic.translation_norm_bound", Harmonic, 0.0, |cfg| {
            let ctx = &cfg.ctx;
            let k = TranslationKernel::new(ctx)?;
            let b = 1.0 / qpoch_inf(ctx.q(), ctx.q() * ctx.q(), ctx)?.powi(2);
            let f = &signals(cfg, 1)?[0];
            let nf = lp_norm(f, 2.0, ctx)?;
            let mut worst: f64 = 0.0;
            for x in [-3i64, 0, 3] {
                let t = k.translate_to(f, Some(x), cfg.grid);
                worst = worst.max((lp_norm(&t, 2.0, ctx)? / (b * nf) - 1.0).max(0.0));
            }
            Ok(worst)
        }),
        check("harmonic.operator_diagonalization", Harmonic, 1e-7, |cfg| {
            let ctx = &cfg.ctx;
            let f = &signals(cfg, 1)?[0];
            let lhs = bessel_fourier(&q_bessel_operator(f, ctx), ctx)?;
            let ff = bessel_fourier(f, ctx)?;
            let want = ff.multiply(|m| -ctx.point(m).powi(2), 0.0);
            Ok(l2(&lhs, &want, ctx))
        }),
        check("harmonic.convolution_theorem", Harmonic, 1e-7, |cfg| {
            let ctx = &cfg.ctx;
            let fs = signals(cfg, 4)?;
            let mut worst: f64 = 0.0;
            for p in fs.chunks(2) {
                let lhs = bessel_fourier(&bessel_convolve(&p[0], &p[1], ctx)?, ctx)?;
                let (a, b) = (bessel_fourier(&p[0], ctx)?, bessel_fourier(&p[1], ctx)?);
                let want = LatticeFunction::from_exponent_fn(cfg.grid, a.value_at_zero() * b.value_at_zero(), |m| a.at(m) * b.at(m));
                worst = worst.max(l2(&lhs, &want, ctx));
            }
            Ok(worst)
        }),
        check("harmonic.convolution_norm_identity", Harmonic, 1e-7, |cfg| {
            let ctx = &cfg.ctx;
            let fs = signals(cfg, 2)?;
            let c = bessel_convolve(&fs[0], &fs[1], ctx)?;
            let lhs = ctx.q().powf(4.0 * ctx.alpha() + 2.0) * lp_norm(&c, 2.0, ctx)?.powi(2);
            let (a, b) = (bessel_fourier(&fs[0], ctx)?, bessel_fourier(&fs[1], ctx)?);
            let p = LatticeFunction::from_exponent_fn(cfg.grid, C64::new((a.value_at_zero() * b.value_at_zero()).norm_sqr(), 0.0), |m| {
                C64::new((a.at(m) * b.at(m)).norm_sqr(), 0.0)
            });
            let rhs = integrate_power(&p, 2.0 * ctx.alpha() + 1.0, ctx)?.re;
            Ok(rel(lhs, rhs))
        }),
        check("harmonic.convolution_commutes", Harmonic, 1e-7, |cfg| {
            let ctx = &cfg.ctx;
            let fs = signals(cfg, 2)?;
            Ok(l2(&bessel_convolve(&fs[0], &fs[1], ctx)?, &bessel_convolve(&fs[1], &fs[0], ctx)?, ctx))
        }),
        check("harmonic.cosine_plancherel", Harmonic, 1e-7, |cfg| {
            let cc = cfg.ctx.cosine();
            let f = &signals(cfg, 1)?[0];
            Ok(rel(lp_norm(&cosine_fourier(f, &cc)?, 2.0, &cc)?, lp_norm(f, 2.0, &cc)?))
        }),
        // ---- wavelet
        check("wavelet.plancherel", Wavelet, 1e-5, |cfg| {
            let ctx = &cfg.ctx;
            let w = WaveletDescriptor::gaussian(cfg.grid, ctx)?;
            let mut worst: f64 = 0.0;
            for f in signals(cfg, 3)? {
                let plane = wavelet_transform_auto(&f, &w, ctx)?;
                worst = worst.max(rel(wavelet_plancherel(&plane, &w, ctx)?, lp_norm(&f, 2.0, ctx)?.powi(2)));
            }
            Ok(worst)
        }),
        check("wavelet.parseval", Wavelet, 1e-5, |cfg| {
            let ctx = &cfg.ctx;
            let w = WaveletDescriptor::gaussian(cfg.grid, ctx)?;
            let fs = signals(cfg, 2)?;
            let grids = joint_grids(&fs[0], &fs[1], &w, ctx)?;
            let p1 = wavelet_transform_on(&fs[0], &w, grids, ctx)?;
            let p2 = wavelet_transform_on(&fs[1], &w, grids, ctx)?;
            let lhs = wavelet_parseval(&p1, &p2, &w, ctx)?;
            let rhs = inner_product(&fs[0], &fs[1], ctx)?;
            Ok((lhs - rhs).norm() / (lp_norm(&fs[0], 2.0, ctx)? * lp_norm(&fs[1], 2.0, ctx)?))
        }),
        check("wavelet.reconstruction", Wavelet, 1e-4, |cfg| {
            let ctx = &cfg.ctx;
            let w = WaveletDescriptor::gaussian(cfg.grid, ctx)?;
            let mut worst: f64 = 0.0;
            for f in signals(cfg, 3)? {
                let plane = wavelet_transform_auto(&f, &w, ctx)?;
                worst = worst.max(l2(&wavelet_reconstruct(&plane, &w, cfg.grid, ctx)?, &f, ctx));
            }
            Ok(worst)
        }),
        check("wavelet.reproducing_kernel", Wavelet, 1e-4, |cfg| {
            let ctx = &cfg.ctx;
            let w = WaveletDescriptor::gaussian(cfg.grid, ctx)?;
            let f = &signals(cfg, 1)?[0];
            reproducing_kernel_check(&wavelet_transform_auto(f, &w, ctx)?, &w, ctx)
        }),
        check("wavelet.kernel_separation", Wavelet, 1.0, |cfg| {
            // (10 x 1e-4) / residual of a perturbed plane: below 1 when the planes separate
            let ctx = &cfg.ctx;
            let w = WaveletDescriptor::gaussian(cfg.grid, ctx)?;
            let f = &signals(cfg, 1)?[0];
            let plane = wavelet_transform_auto(f, &w, ctx)?;
            let bumped = perturb(&plane, cfg.seed);
            Ok(1e-3 / reproducing_kernel_check(&bumped, &w, ctx)?)
        }),
        check("wavelet.linearity", Wavelet, 1e-12, |cfg| {
            let ctx = &cfg.ctx;
            let w = WaveletDescriptor::gaussian(cfg.grid, ctx)?;
            let fs = signals(cfg, 2)?;
            let (a, b) = (C64::new(0.6, 0.3), C64::new(-1.1, 0.0));
            let grids = joint_grids(&fs[0], &fs[1], &w, ctx)?;
            let lhs = wavelet_transform_on(&LatticeFunction::lin_comb(a, &fs[0], b, &fs[1]), &w, grids, ctx)?;
            let p1 = wavelet_transform_on(&fs[0], &w, grids, ctx)?;
            let p2 = wavelet_transform_on(&fs[1], &w, grids, ctx)?;
            lhs.rel_distance(&p1.lin_comb(a, &p2, b)?)
        }),
        check("wavelet.direct_matches_spectral", Wavelet, 1e-8, |cfg| {
            let ctx = &cfg.ctx;
            let w = WaveletDescriptor::gaussian(cfg.grid, ctx)?;
            let f = &signals(cfg, 1)?[0];
            let plane = wavelet_transform_auto(f, &w, ctx)?;
            let kernel = TranslationKernel::new(ctx)?;
            let mut worst: f64 = 0.0;
            for (i, k) in [(0i64, Some(0i64)), (2, Some(-3)), (-3, Some(4)), (1, None)] {
                let d = wavelet_coefficient_direct(f, &w.g, i, k, &kernel)?;
                let s = k.map(|k| plane.get(i, k)).unwrap_or_else(|| plane.at_origin(i));
                worst = worst.max((d - s).norm() / plane.sup_norm());
            }
            Ok(worst)
        }),
        check("wavelet.family_spectrum", Wavelet, 1e-8, |cfg| {
            let ctx = &cfg.ctx;
            let w = WaveletDescriptor::gaussian(cfg.grid, ctx)?;
            let bj = BesselJ::new(ctx);
            let (i, k) = (1i64, 2i64);
            let gab = wavelet_family(&w.g, ctx.point(i), ctx.point(k), ctx)?;
            let lhs = bessel_fourier(&gab, ctx)?;
            let sa = ctx.point(i).sqrt();
            let want = LatticeFunction::from_exponent_fn(lhs.grid(), w.spectrum.value_at_zero() * sa, |m| {
                w.spectrum.at(m + i) * (sa * bj.at_exp(m + k))
            });
            Ok(rel_sup_error_on(&lhs, &want, lhs.grid().exponents()))
        }),
        // ---- fractional
        check("fractional.factorization", Fractional, 1e-6, |cfg| {
            let ctx = &cfg.ctx;
            let mut worst: f64 = 0.0;
            for k in 0..3 {
                let f = s_alpha(cfg, k)?;
                let a = bessel_fourier(&f, ctx)?;
                let b = cosine_fourier(&weyl(&f, ctx)?, ctx)?;
                worst = worst.max(l2(&b, &a, ctx));
            }
            Ok(worst)
        }),
        check("fractional.intertwining", Fractional, 1e-7, |cfg| {
            let ctx = &cfg.ctx;
            let mut worst: f64 = 0.0;
            for k in 0..10 {
                let f = s_star(cfg, k)?;
                let a = q_bessel_operator(&riemann_liouville(&f, ctx)?, ctx);
                let b = riemann_liouville(&q_laplacian_even(&f, ctx), ctx)?;
                let num = rel_l2_error_on(&a, &b, cfg.grid.interior(2), ctx) * l2_on(&b, cfg.grid.interior(2), ctx);
                worst = worst.max(num / lp_norm(&f, 2.0, ctx)?);
            }
            Ok(worst)
        }),
        check("fractional.weyl_of_bessel_convolution", Fractional, 1e-6, |cfg| {
            let ctx = &cfg.ctx;
            let (f, g) = (s_alpha(cfg, 0)?, s_alpha(cfg, 1)?);
            let lhs = weyl(&bessel_convolve(&f, &g, ctx)?, ctx)?;
            let rhs = cosine_convolve(&weyl(&f, ctx)?, &weyl(&g, ctx)?, ctx)?;
            Ok(l2(&lhs, &rhs, &ctx.cosine()))
        }),
        check("fractional.rl_of_cosine_convolution", Fractional, 1e-6, |cfg| {
            let ctx = &cfg.ctx;
            let (f, g) = (s_half(cfg, 0)?, s_half(cfg, 1)?);
            let lhs = riemann_liouville(&cosine_convolve(&f, &g, ctx)?, ctx)?;
            let rhs = bessel_convolve(&riemann_liouville(&f, ctx)?, &weyl_inverse(&g, ctx)?, ctx)?;
            Ok(l2(&lhs, &rhs, ctx))
        }),
        check("fractional.k1_commutes_with_cosine_convolution", Fractional, 1e-6, |cfg| {
            let ctx = &cfg.ctx;
            let (f, g) = (s_half(cfg, 0)?, gaussian(cfg.grid, ctx)?);
            let lhs = k1(&cosine_convolve(&f, &g, ctx)?, ctx)?;
            let rhs = cosine_convolve(&k1(&f, ctx)?, &g, ctx)?;
            Ok(l2(&lhs, &rhs, &ctx.cosine()))
        }),
        check("fractional.k2_commutes_with_bessel_convolution", Fractional, 1e-6, |cfg| {
            let ctx = &cfg.ctx;
            let (f, g) = (s_alpha(cfg, 0)?, gaussian(cfg.grid, ctx)?);
            let lhs = k2(&bessel_convolve(&f, &g, ctx)?, ctx)?;
            let rhs = bessel_convolve(&k2(&f, ctx)?, &g, ctx)?;
            Ok(l2(&lhs, &rhs, ctx))
        }),
        check("fractional.k1_dilation_law", Fractional, 1e-6, |cfg| {
            let ctx = &cfg.ctx;
            let cc = ctx.cosine();
            let f = s_half(cfg, 0)?;
            let i = 2;
            let lhs = k1(&dilatation_exp(&f, i, &cc).restrict(cfg.grid), ctx)?;
            let s = ctx.point(i).powf(-(2.0 * ctx.alpha() + 1.0));
            let rhs = dilatation_exp(&k1(&f, ctx)?, i, &cc).scale_real(s);
            Ok(rel_l2_error_on(&lhs, &rhs, cfg.grid.exponents(), &cc))
        }),
        check("fractional.k2_dilation_law", Fractional, 1e-6, |cfg| {
            let ctx = &cfg.ctx;
            let f = s_alpha(cfg, 0)?;
            let i = 2;
            let lhs = k2(&dilate_exp(&f, i, ctx).restrict(cfg.grid), ctx)?;
            let s = ctx.point(i).powf(-(2.0 * ctx.alpha() + 1.0));
            let rhs = dilate_exp(&k2(&f, ctx)?, i, ctx).scale_real(s);
            Ok(rel_l2_error_on(&lhs, &rhs, cfg.grid.exponents(), ctx))
        }),
        check("fractional.k_wavelets_admissible", Fractional, 0.0, |cfg| {
            let ctx = &cfg.ctx;
            let w = WaveletDescriptor::gaussian(cfg.grid, ctx)?;
            let a = k1_weyl_wavelet(&w, ctx)?.c_g;
            let b = k2_wavelet(&w, ctx)?.c_g;
            Ok(if a.is_finite() && a > 0.0 && b.is_finite() && b > 0.0 { 0.0 } else { 1.0 })
        }),
        check("fractional.k2_conjugation", Fractional, 1e-6, |cfg| {
            let ctx = &cfg.ctx;
            let f = s_alpha(cfg, 0)?;
            let lhs = weyl_inverse(&k1(&weyl(&f, ctx)?, ctx)?, ctx)?;
            Ok(l2(&lhs, &k2(&f, ctx)?, ctx))
        }),
        check("fractional.inversion_r_k1_w", Fractional, 1e-5, |cfg| {
            let ctx = &cfg.ctx;
            worst_over(3, |k| {
                let f = s_alpha(cfg, k)?;
                Ok(l2(&riemann_liouville(&k1(&weyl(&f, ctx)?, ctx)?, ctx)?, &f, ctx))
            })
        }),
        check("fractional.inversion_r_w_k2", Fractional, 1e-5, |cfg| {
            let ctx = &cfg.ctx;
            worst_over(3, |k| {
                let f = s_alpha(cfg, k)?;
                Ok(l2(&riemann_liouville(&riemann_liouville_inverse(&f, ctx)?, ctx)?, &f, ctx))
            })
        }),
        check("fractional.inversion_w_r_k1", Fractional, 1e-5, |cfg| {
            let ctx = &cfg.ctx;
            worst_over(3, |k| {
                let f = s_half(cfg, k)?;
                Ok(l2(&weyl(&weyl_inverse(&f, ctx)?, ctx)?, &f, &ctx.cosine()))
            })
        }),
        check("fractional.inversion_w_k2_r", Fractional, 1e-5, |cfg| {
            let ctx = &cfg.ctx;
            worst_over(3, |k| {
                let f = s_half(cfg, k)?;
                Ok(l2(&weyl(&k2(&riemann_liouville(&f, ctx)?, ctx)?, ctx)?, &f, &ctx.cosine()))
            })
        }),
        check("fractional.inverse_forms_agree", Fractional, 1e-6, |cfg| {
            let ctx = &cfg.ctx;
            let (fa, fm) = (s_alpha(cfg, 0)?, s_half(cfg, 0)?);
            let r = l2(&riemann_liouville_inverse(&fa, ctx)?, &k1(&weyl(&fa, ctx)?, ctx)?, &ctx.cosine());
            let w = l2(&weyl_inverse(&fm, ctx)?, &k2(&riemann_liouville(&fm, ctx)?, ctx)?, ctx);
            Ok(r.max(w))
        }),
        check("fractional.psi_from_phi", Fractional, 1e-5, |cfg| {
            let ctx = &cfg.ctx;
            let w = WaveletDescriptor::gaussian(cfg.grid, ctx)?;
            let f = s_alpha(cfg, 0)?;
            let plane = wavelet_transform_auto(&f, &w, ctx)?;
            let sc = plane.grids.scales;
            let top = sc.exponents().max_by(|&a, &b| plane.row(a).max_abs().total_cmp(&plane.row(b).max_abs())).unwrap_or(sc.n_min);
            let pos = plane.grids.positions;
            let mut worst: f64 = 0.0;
            for form in [PsiFromPhi::Weyl, PsiFromPhi::RiemannLiouville, PsiFromPhi::K1] {
                for i in [top - 2, top, top + 2].into_iter().filter(|i| sc.contains(*i)) {
                    let r = wavelet_relation_psi_from_phi(&f, &w, i, pos, form, ctx)?;
                    worst = worst.max(rel_sup_error_on(&r, &plane.row(i), pos.exponents()));
                }
            }
            Ok(worst)
        }),
        check("fractional.wavelet_inversion_weyl", Fractional, 1e-4, |cfg| {
            let ctx = &cfg.ctx;
            let w = WaveletDescriptor::gaussian(cfg.grid, ctx)?;
            let f = s_half(cfg, 0)?;
            Ok(l2(&wavelet_inversion_weyl(&f, &w, None, ctx)?, &weyl_inverse(&f, ctx)?, ctx))
        }),
        check("fractional.wavelet_inversion_rl", Fractional, 1e-4, |cfg| {
            let ctx = &cfg.ctx;
            let w = WaveletDescriptor::gaussian(cfg.grid, ctx)?;
            let f = s_alpha(cfg, 0)?;
            Ok(l2(&wavelet_inversion_rl(&f, &w, None, ctx)?, &riemann_liouville_inverse(&f, ctx)?, &ctx.cosine()))
        }),
        check("fractional.uncertified_input_warns", Fractional, 0.0, |cfg| {
            let ctx = &cfg.ctx;
            let (_, warn) = riemann_liouville_inverse_checked(&gaussian(cfg.grid, ctx)?, ctx)?;
            let (_, quiet) = riemann_liouville_inverse_checked(&s_alpha(cfg, 0)?, ctx)?;
            Ok(if warn.is_some() && quiet.is_none() { 0.0 } else { 1.0 })
        }),
    ]
}

fn worst_over(n: u64, f: impl Fn(u64) -> Result<f64>) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for k in 0..n {
        worst = worst.max(f(k)?);
    }
    Ok(worst)
}

fn l2_on(f: &LatticeFunction, exps: impl Iterator<Item = i64>, ctx: &QContext) -> f64 {
    exps.map(|n| f.at(n).norm_sqr() * ctx.weight(n)).sum::<f64>().mul_add(1.0 - ctx.q(), 0.0).sqrt()
}

/// Grids covering the automatic grids of both signals.
fn joint_grids(f1: &LatticeFunction, f2: &LatticeFunction, w: &WaveletDescriptor, ctx: &QContext) -> Result<PlaneGrids> {
    let a = auto_grids(f1, w, ctx)?;
    let b = auto_grids(f2, w, ctx)?;
    Ok(PlaneGrids {
        scales: a.scales.union(&b.scales),
        positions: a.positions.union(&b.positions),
        spectral: a.spectral.union(&b.spectral),
    })
}

/// Add a deterministic pseudo-random disturbance of 1% of the sup-norm to every entry.
fn perturb(plane: &TimeScalePlane, seed: u64) -> TimeScalePlane {
    use rand::{Rng, SeedableRng};
    let s = 1e-2 * plane.sup_norm();
    let noise: Vec<(f64, f64)> = {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        (0..(plane.n_scales() * (plane.n_positions() + 1))).map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()
    };
    let np = plane.n_positions() as i64 + 1;
    let (s0, p0) = (plane.grids.scales.n_min, plane.grids.positions.n_min);
    plane.map(|i, k, v| {
        let c = k.map(|k| k - p0).unwrap_or(np - 1);
        let (a, b) = noise[((i - s0) * np + c) as usize];
        v + C64::new(a, b) * s
    })
}
