use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{QError, Result};
use crate::harmonic::{bessel_fourier_inverse, cosine_fourier_inverse};
use crate::lattice::{integrate_power, LatticeFunction, LatticeGrid, QContext};
use crate::special::sample_q_exponential;

/// Relative size below which a moment counts as vanishing.
pub const MOMENT_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TestClassTag {
    /// Rapidly decreasing even functions, no moment conditions.
    SStarQ,
    /// Vanishing moments `int f x^{2k+2a+1} d_q x`: the image of `F_{alpha,q}^{-1}`
    /// applied to spectra that vanish near the origin.
    SStarQAlpha,
    /// Same with `alpha = -1/2`.
    SStarQMinusHalf,
    /// Functions vanishing near the origin.
    SZero,
}

/// A test-function class with the number of moments `0..=moment_depth` it certifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TestFunctionClass {
    pub tag: TestClassTag,
    pub moment_depth: usize,
}

impl TestFunctionClass {
    pub const S_STAR_Q: TestFunctionClass = TestFunctionClass { tag: TestClassTag::SStarQ, moment_depth: 3 };
    pub const S_STAR_Q_ALPHA: TestFunctionClass = TestFunctionClass { tag: TestClassTag::SStarQAlpha, moment_depth: 3 };
    pub const S_STAR_Q_MINUS_HALF: TestFunctionClass =
        TestFunctionClass { tag: TestClassTag::SStarQMinusHalf, moment_depth: 3 };
    pub const S_ZERO: TestFunctionClass = TestFunctionClass { tag: TestClassTag::SZero, moment_depth: 3 };

    pub fn with_depth(self, moment_depth: usize) -> Self {
        TestFunctionClass { moment_depth, ..self }
    }
}

/// Random smooth bump: a few `cos^2` humps in the exponent with complex amplitudes,
/// supported on `[lo, hi]`.
fn bump(grid: LatticeGrid, lo: i64, hi: i64, rng: &mut ChaCha8Rng) -> LatticeFunction {
    let humps: Vec<(f64, f64, C64)> = (0..3)
        .map(|_| {
            let h = rng.gen_range(2.0..=((hi - lo) as f64 / 2.0).max(2.0));
            let c = rng.gen_range(lo as f64 + h..=(hi as f64 - h).max(lo as f64 + h));
            let a = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            (c, h, a)
        })
        .collect();
    LatticeFunction::from_exponent_fn(grid, C64::default(), |n| {
        humps
            .iter()
            .filter(|(c, h, _)| (n as f64 - c).abs() < *h)
            .map(|(c, h, a)| a * (PI * (n as f64 - c) / (2.0 * h)).cos().powi(2))
            .sum()
    })
}

fn tag_salt(tag: TestClassTag) -> u64 {
    match tag {
        TestClassTag::SStarQ => 0x51,
        TestClassTag::SStarQAlpha => 0x52,
        TestClassTag::SStarQMinusHalf => 0x53,
        TestClassTag::SZero => 0x54,
    }
}

/// Deterministic member of `class` on `grid`, drawn from `seed`, and certified.
///
/// Spectral bumps sit at exponents `[n_min + 3, n_min + 9]` of the frequency window so the
/// inverse transform decays well inside the window; `S_ZERO` bumps sit at
/// `[n_min + 3, n_min + 11]`.
pub fn make_test_function(class: TestFunctionClass, seed: u64, grid: LatticeGrid, ctx: &QContext) -> Result<LatticeFunction> {
    if grid.len() < 16 {
        return Err(QError::InvalidParameter(format!("window {grid} too small for a test function")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ tag_salt(class.tag));
    let lo = grid.n_min + 3;
    let f = match class.tag {
        TestClassTag::SZero => bump(grid, lo, grid.n_min + 11, &mut rng),
        TestClassTag::SStarQAlpha => bessel_fourier_inverse(&bump(grid, lo, grid.n_min + 9, &mut rng), ctx)?,
        TestClassTag::SStarQMinusHalf => cosine_fourier_inverse(&bump(grid, lo, grid.n_min + 9, &mut rng), ctx)?,
        TestClassTag::SStarQ => {
            let mut f = LatticeFunction::zeros(grid);
            for _ in 0..3 {
                let l = rng.gen_range(-3..=1);
                let a = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                let e = sample_q_exponential(grid, l, ctx);
                f = LatticeFunction::lin_comb(C64::new(1.0, 0.0), &f, a, &e);
            }
            f
        }
    };
    certify(&f, class, ctx)?;
    Ok(f)
}

/// `|int f x^{2k+2b+1}| <= MOMENT_TOL * int |f| x^{2k+2b+1}` for `k = 0..=depth`.
fn check_moments(f: &LatticeFunction, b: f64, depth: usize, ctx: &QContext) -> Result<()> {
    let abs = LatticeFunction::from_exponent_fn(f.grid(), C64::new(f.value_at_zero().norm(), 0.0), |n| {
        C64::new(f.at(n).norm(), 0.0)
    });
    for k in 0..=depth {
        let p = 2.0 * k as f64 + 2.0 * b + 1.0;
        let m = integrate_power(f, p, ctx)?.norm();
        let s = integrate_power(&abs, p, ctx)?.re;
        if m > MOMENT_TOL * s {
            return Err(QError::CertificationFailure(format!(
                "moment {k} is {:.3e} of its absolute size (limit {MOMENT_TOL:e})",
                m / s
            )));
        }
    }
    Ok(())
}

/// Check that `f` has the defining property of `class` to the available precision.
pub fn certify(f: &LatticeFunction, class: TestFunctionClass, ctx: &QContext) -> Result<()> {
    match class.tag {
        TestClassTag::SStarQ => Ok(()),
        TestClassTag::SStarQAlpha => check_moments(f, ctx.alpha(), class.moment_depth, ctx),
        TestClassTag::SStarQMinusHalf => check_moments(f, -0.5, class.moment_depth, ctx),
        TestClassTag::SZero => {
            // q-derivatives up to order 2 depth + 1 at the origin see the innermost points
            let g = f.grid();
            let need = 2 * class.moment_depth as i64 + 2;
            let scale = f.max_abs();
            let bad = f.value_at_zero().norm() > 0.0
                || (g.n_max - need + 1..=g.n_max).any(|n| f.at(n).norm() > MOMENT_TOL * scale);
            if bad {
                Err(QError::CertificationFailure("function does not vanish near the origin".into()))
            } else {
                Ok(())
            }
        }
    }
}
