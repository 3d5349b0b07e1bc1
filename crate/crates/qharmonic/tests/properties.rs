//! Property tests over random seeds, orders and arguments.

use num_complex::Complex64 as C64;
use proptest::prelude::*;

use qharmonic::fractional::*;
use qharmonic::harmonic::*;
use qharmonic::lattice::io;
use qharmonic::lattice::*;
use qharmonic::special::*;
use qharmonic::verify::{self, Suite, VerifyConfig};
use qharmonic::wavelet::*;
use qharmonic::QError;

fn ctx(alpha: f64) -> QContext {
    QContext::new(0.5, alpha).unwrap()
}

fn grid() -> LatticeGrid {
    LatticeGrid::new(-10, 30).unwrap()
}

fn signal(seed: u64, c: &QContext) -> LatticeFunction {
    make_test_function(TestFunctionClass::S_ZERO, seed, grid(), c).unwrap()
}

fn alphas() -> impl Strategy<Value = f64> {
    prop_oneof![Just(-0.25), Just(0.0), Just(0.5), Just(1.0), -0.45f64..2.5]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, .. ProptestConfig::default() })]

    #[test]
    fn csv_and_json_round_trip_exactly(lo in -20i64..5, len in 1i64..40, seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let g = LatticeGrid::new(lo, lo + len - 1).unwrap();
        let vals: Vec<C64> = (0..len).map(|_| C64::new(rng.gen_range(-1e3..1e3), rng.gen_range(-1e-3..1e-3))).collect();
        let f = LatticeFunction::new(g, vals, C64::new(rng.gen(), -rng.gen::<f64>())).unwrap();
        let c = ctx(0.0);
        let back = io::from_csv(&io::to_csv(&f, &c).unwrap()).unwrap();
        prop_assert_eq!(back.values(), f.values());
        prop_assert_eq!(back.value_at_zero(), f.value_at_zero());
        let (back, q, a) = io::from_json(&io::to_json(&f, &c).unwrap()).unwrap();
        prop_assert_eq!(back.values(), f.values());
        prop_assert_eq!((q, a), (0.5, 0.0));
    }

    #[test]
    fn gamma_recurrence(x in 0.05f64..12.0, q in 0.05f64..0.95) {
        let c = QContext::new(q, 0.0).unwrap();
        let lhs = q_gamma(x + 1.0, &c).unwrap();
        let rhs = q_bracket(x, &c) * q_gamma(x, &c).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * rhs.abs());
    }

    #[test]
    fn jackson_integral_is_additive(i in -6i64..4, d in 1i64..8) {
        let c = ctx(0.0);
        let f = |x: f64| C64::new(x.sin() + x * x, 0.0);
        let (b, a) = (c.point(i), c.point(i + d));
        let whole = jackson_integral_0_to_a(f, b, &c).unwrap();
        let split = jackson_integral_0_to_a(f, a, &c).unwrap() + jackson_integral_a_to_b(f, a, b, &c).unwrap();
        prop_assert!((whole - split).norm() <= 1e-14 * whole.norm());
    }

    #[test]
    fn bessel_bounds_hold_on_the_compatible_lattice(alpha in alphas(), n in -12i64..40) {
        let c = ctx(alpha);
        let x = c.point(n);
        let j = j_normalized(x, &c).unwrap().abs();
        prop_assert!(j <= estim_bound_1(&c).unwrap() * (1.0 + 1e-12));
        prop_assert!(j <= estim_bound_2(x, &c).unwrap() * (1.0 + 1e-12));
    }

    #[test]
    fn bessel_functions_are_eigenfunctions(alpha in alphas(), l in -2i64..4) {
        let c = ctx(alpha);
        let j = sample_j(grid(), l, &c);
        let dj = q_bessel_operator(&j, &c);
        let lam2 = c.point(l).powi(2);
        for n in grid().interior(1) {
            prop_assert!((dj.at(n) + j.at(n) * lam2).norm() <= 1e-8);
        }
    }

    #[test]
    fn fourier_scales_norms(alpha in alphas(), seed in any::<u64>()) {
        let c = ctx(alpha);
        let f = signal(seed, &c);
        let ff = bessel_fourier(&f, &c).unwrap();
        let k = c.q().powf(2.0 * alpha + 1.0);
        let (a, b) = (lp_norm(&ff, 2.0, &c).unwrap(), k * lp_norm(&f, 2.0, &c).unwrap());
        prop_assert!((a - b).abs() <= 1e-7 * b);
        let back = bessel_fourier_inverse(&ff, &c).unwrap();
        prop_assert!(rel_l2_error(&back, &f, &c) <= 1e-7);
    }

    #[test]
    fn translation_is_symmetric(alpha in alphas(), seed in any::<u64>(), x in -4i64..8, y in -4i64..8) {
        let c = ctx(alpha);
        let f = signal(seed, &c);
        let k = TranslationKernel::new(&c).unwrap();
        let (a, b) = (k.eval(&f, Some(x), Some(y)), k.eval(&f, Some(y), Some(x)));
        prop_assert!((a - b).norm() <= 1e-12 * f.max_abs());
    }

    #[test]
    fn convolution_commutes(alpha in alphas(), s1 in any::<u64>(), s2 in any::<u64>()) {
        let c = ctx(alpha);
        let (f, g) = (signal(s1, &c), signal(s2, &c));
        let a = bessel_convolve(&f, &g, &c).unwrap();
        let b = bessel_convolve(&g, &f, &c).unwrap();
        prop_assert!(rel_l2_error(&a, &b, &c) <= 1e-7);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 8, .. ProptestConfig::default() })]

    #[test]
    fn wavelet_round_trip(alpha in alphas(), seed in any::<u64>()) {
        let c = ctx(alpha);
        let f = signal(seed, &c);
        let w = WaveletDescriptor::gaussian(grid(), &c).unwrap();
        let plane = wavelet_transform_auto(&f, &w, &c).unwrap();
        let norm2 = lp_norm(&f, 2.0, &c).unwrap().powi(2);
        prop_assert!((wavelet_plancherel(&plane, &w, &c).unwrap() - norm2).abs() <= 1e-5 * norm2);
        let back = wavelet_reconstruct(&plane, &w, grid(), &c).unwrap();
        prop_assert!(rel_l2_error(&back, &f, &c) <= 1e-4);
        prop_assert!(reproducing_kernel_check(&plane, &w, &c).unwrap() <= 1e-4);
    }

    #[test]
    // Up to alpha = 1. Beyond it K1 multiplies the ulp-level spectrum of the stored samples
    // by |l|^{2a+1} (about 5e11 at l = 2^10, alpha = 1.44) and W o W^{-1} drifts to 1e-4.
    fn fractional_inverses(alpha in prop_oneof![Just(-0.25), Just(0.0), Just(0.5), Just(1.0), -0.4f64..=1.0], seed in any::<u64>()) {
        let c = ctx(alpha);
        let fa = make_test_function(TestFunctionClass::S_STAR_Q_ALPHA, seed, grid(), &c).unwrap();
        let back = riemann_liouville(&riemann_liouville_inverse(&fa, &c).unwrap(), &c).unwrap();
        prop_assert!(rel_l2_error(&back, &fa, &c) <= 1e-5);
        let cc = c.cosine();
        let fm = make_test_function(TestFunctionClass::S_STAR_Q_MINUS_HALF, seed, grid(), &cc).unwrap();
        let back = weyl(&weyl_inverse(&fm, &c).unwrap(), &c).unwrap();
        prop_assert!(rel_l2_error(&back, &fm, &cc) <= 1e-5);
    }

    #[test]
    fn weyl_factors_the_bessel_transform(alpha in alphas(), seed in any::<u64>()) {
        let c = ctx(alpha);
        let f = make_test_function(TestFunctionClass::S_STAR_Q_ALPHA, seed, grid(), &c).unwrap();
        let a = bessel_fourier(&f, &c).unwrap();
        let b = cosine_fourier(&weyl(&f, &c).unwrap(), &c).unwrap();
        prop_assert!(rel_l2_error(&b, &a, &c) <= 1e-6);
    }
}

#[test]
fn riemann_liouville_fixes_constants() {
    for alpha in [-0.25, 0.0, 0.5, 1.0] {
        let c = ctx(alpha);
        let one = LatticeFunction::constant(grid(), C64::new(1.0, 0.0));
        let r = riemann_liouville(&one, &c).unwrap();
        for n in grid().exponents() {
            assert!((r.at(n) - 1.0).norm() < 1e-14, "alpha={alpha} n={n}");
        }
    }
}

#[test]
fn parameters_are_validated() {
    assert!(matches!(QContext::new(1.2, 0.0), Err(QError::InvalidParameter(_))));
    assert!(matches!(QContext::new(0.5, -0.5), Err(QError::InvalidParameter(_))));
    assert!(matches!(QContext::build(0.7, 0.0, 1e-12, 1e-17, 4096, true), Err(QError::InvalidParameter(_))));
    assert!(QContext::build(0.5, 0.0, 1e-12, 1e-17, 4096, true).is_ok());
    assert!(LatticeGrid::new(3, 2).is_err());
}

#[test]
fn zero_wavelet_is_not_admissible() {
    let c = ctx(0.0);
    let z = LatticeFunction::zeros(grid());
    assert!(matches!(WaveletDescriptor::new(z, WaveletKind::Bessel, "zero", &c), Err(QError::NotAdmissible(_))));
    let g = gaussian(grid(), &c).unwrap();
    assert!(matches!(WaveletDescriptor::new(g, WaveletKind::Bessel, "gauss", &c), Err(QError::NotAdmissible(_))));
}

#[test]
fn uncertified_inputs_warn() {
    let c = ctx(0.5);
    let g = gaussian(grid(), &c).unwrap();
    assert!(certify(&g, TestFunctionClass::S_STAR_Q_ALPHA, &c).is_err());
    let (_, w) = riemann_liouville_inverse_checked(&g, &c).unwrap();
    assert!(w.is_some());
    let (_, w) = weyl_inverse_checked(&g, &c).unwrap();
    assert!(w.is_some());
}

#[test]
fn verify_is_deterministic() {
    let cfg = VerifyConfig::new(ctx(0.5));
    let a = verify::run(&[Suite::Harmonic, Suite::Fractional], &cfg);
    let b = verify::run(&[Suite::Harmonic, Suite::Fractional], &cfg);
    assert_eq!(a, b);
    let keys: Vec<(Suite, &str)> = a.checks.iter().map(|c| (c.suite, c.id.as_str())).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn plane_json_round_trips() {
    let c = ctx(0.0);
    let f = signal(7, &c);
    let w = WaveletDescriptor::gaussian(grid(), &c).unwrap();
    let plane = wavelet_transform_auto(&f, &w, &c).unwrap();
    let back = TimeScalePlane::from_json(&plane.to_json().unwrap()).unwrap();
    assert_eq!(back, plane);
}
