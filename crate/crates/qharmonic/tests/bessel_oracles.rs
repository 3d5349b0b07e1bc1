//! Reference values of j_alpha(q^k; q^2) at q = 1/2, computed with mpmath at 800 digits.

use qharmonic::special::{j_normalized, BesselJ};
use qharmonic::QContext;

const REF: &[(f64, i64, f64)] = &[
    (-0.25, 5, 0.99949648187276749),
    (-0.25, 0, 0.52145993859585497),
    (-0.25, -3, -0.001191979175088986),
    (-0.25, -6, 3.1791611518660131e-12),
    (-0.25, -10, 4.3094101169307613e-32),
    (0.0, 5, 0.9995660023625655),
    (0.0, 0, 0.58665286961127968),
    (0.0, -3, -0.00035089124953259595),
    (0.0, -6, 3.301732392668857e-13),
    (0.0, -10, 1.1188518365862017e-33),
    (0.5, 5, 0.99962800119168569),
    (0.5, 0, 0.6448459383890751),
    (0.5, -3, -3.6096625839272076e-5),
    (0.5, -6, 4.2347281079561968e-15),
    (0.5, -10, 8.9684760616767398e-37),
    (1.0, 5, 0.9996528007418531),
    (1.0, 0, 0.6681421818142222),
    (1.0, -3, -4.1281958960941124e-6),
    (1.0, -6, 6.0460216168658817e-17),
    (1.0, -10, 8.0026538611034916e-40),
];

const COSINE: &[(i64, f64)] = &[
    (5, 0.99934900677315844),
    (0, 0.38329801391653615),
    (-3, -0.0045841296478146828),
    (-6, 3.468665767377825e-11),
    (-10, 1.8808248541219298e-30),
];

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn tabulated_values_match_mpmath() {
    for &(alpha, k, want) in REF {
        let ctx = QContext::new(0.5, alpha).unwrap();
        let bj = BesselJ::new(&ctx);
        let got = bj.at_exp(k);
        assert!(rel(got, want) < 1e-11, "alpha={alpha} k={k}: {got} vs {want}");
    }
}

#[test]
fn off_lattice_arguments_use_the_same_function() {
    for &(alpha, k, want) in REF.iter().filter(|r| r.1 >= -3) {
        let ctx = QContext::new(0.5, alpha).unwrap();
        let got = j_normalized(0.5f64.powi(k as i32), &ctx).unwrap();
        assert!(rel(got, want) < 1e-11, "alpha={alpha} k={k}: {got} vs {want}");
    }
}

#[test]
fn cosine_is_the_half_order_function() {
    let ctx = QContext::new(0.5, 0.0).unwrap().cosine();
    let bj = BesselJ::new(&ctx);
    for &(k, want) in COSINE {
        assert!(rel(bj.at_exp(k), want) < 1e-11, "k={k}");
    }
}
