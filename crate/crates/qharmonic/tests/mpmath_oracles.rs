//! Reference values at q = 1/2 computed with mpmath (50 digits): q-Gamma, q-shifted
//! factorials, the q-exponential, a Jackson integral, normalizing constants, and the
//! q-Riemann-Liouville and q-Weyl transforms of x -> e_{q^2}^{-x^2} summed term by term.

use num_complex::Complex64 as C64;
use qharmonic::fractional::{k_constant, riemann_liouville, riemann_liouville_constant, weyl, weyl_constant};
use qharmonic::harmonic::orthogonality_constant;
use qharmonic::lattice::qarith::{qpoch, qpoch_inf};
use qharmonic::lattice::{jackson_integral_0_to_inf, q_gamma, q_gamma_base};
use qharmonic::special::{gaussian_amplitude, q_exponential_sq, sample_q_exponential};
use qharmonic::{LatticeGrid, QContext};

const Q: f64 = 0.5;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn ctx(alpha: f64) -> QContext {
    QContext::new(Q, alpha).unwrap()
}

#[test]
fn q_gamma_values() {
    let c = ctx(0.0);
    for (x, want) in [(0.5, 1.5720327257863238), (1.5, 0.9208754502712838), (2.25, 1.0816045089539048), (3.7, 2.197804748922348), (7.1, 20.10060508199429)] {
        assert!(rel(q_gamma(x, &c).unwrap(), want) < 1e-13, "x={x}");
    }
    for (x, want) in [(0.5, 1.4216955012070616), (1.25, 0.9543357923233483), (2.0, 1.0), (3.5, 1.4282774248237609)] {
        assert!(rel(q_gamma_base(x, Q * Q, &c).unwrap(), want) < 1e-13, "x={x}");
    }
}

#[test]
fn shifted_factorials() {
    for (a, n, want) in [(0.3, 5, 0.519803388671875), (-0.7, 12, 3.1956663043045874), (1.9, 7, -0.014489017556619644)] {
        assert!(rel(qpoch(a, n, Q), want) < 1e-14, "a={a} n={n}");
    }
    let c = ctx(0.0);
    for (a, b, want) in [(0.5, 0.25, 0.41942244179510757), (-0.25, 0.25, 1.3559096738634793), (0.7, 0.49, 0.13887004822170082)] {
        assert!(rel(qpoch_inf(a, b, &c).unwrap(), want) < 1e-14, "a={a} base={b}");
    }
}

#[test]
fn q_exponential() {
    let c = ctx(0.0);
    for (x, want) in [(0.5, 0.7919855826661848), (1.0, 0.4525631900949627), (2.0, 0.11314079752374068), (8.0, 0.0001776150667562648)] {
        assert!(rel(q_exponential_sq(x, &c), want) < 1e-13, "x={x}");
    }
}

#[test]
fn jackson_integral_over_half_line() {
    let c = ctx(0.0);
    let grid = LatticeGrid::new(-10, 30).unwrap();
    let got = jackson_integral_0_to_inf(|x| C64::new((-x).exp() * x.sqrt(), 0.0), &grid, &c).unwrap();
    assert!(rel(got.re, 0.639298917389057) < 1e-13);
    assert_eq!(got.im, 0.0);
}

// (alpha, c_alpha, orthogonality constant, C_R, C_W, kappa, Gaussian amplitude)
const CONSTANTS: [(f64, f64, f64, f64, f64, f64, f64); 4] = [
    (-0.25, 1.1749507726050945, 0.7243703370404777, 0.4836065268184532, 0.4663991889018806, 1.9288374454754527, 0.7704519022848021),
    (0.0, 1.0, 0.5, 0.7421267409841396, 0.6091497110662286, 3.2832651213103077, 0.6666666666666666),
    (0.5, 0.6091497110662286, 0.33686968302539966, 1.0, 0.5, 8.0, 0.6473228095196041),
    (1.0, 0.3333333333333333, 0.28125, 1.1131901114762095, 0.3045748555331143, 17.510747313654974, 0.8888888888888888),
];

#[test]
fn normalizing_constants() {
    for (a, c_a, ort, cr, cw, kappa, amp) in CONSTANTS {
        let c = ctx(a);
        assert!(rel(c.c_alpha(), c_a) < 1e-13, "c_alpha at {a}");
        assert!(rel(orthogonality_constant(&c).unwrap(), ort) < 1e-13, "orthogonality at {a}");
        assert!(rel(riemann_liouville_constant(&c).unwrap(), cr) < 1e-13, "C_R at {a}");
        assert!(rel(weyl_constant(&c).unwrap(), cw) < 1e-13, "C_W at {a}");
        assert!(rel(k_constant(&c).unwrap(), kappa) < 1e-13, "kappa at {a}");
        assert!(rel(gaussian_amplitude(&c).unwrap(), amp) < 1e-12, "amplitude at {a}");
    }
}

// (alpha, [(m, R e(q^m))], [(m, W e(q^m))])
type Samples = [(i64, f64); 3];
const TRANSFORMS: [(f64, Samples, Samples); 4] = [
    (
        -0.25,
        [(-3, 0.04889723305743062), (0, 0.5645623411515038), (4, 0.9969877112756506)],
        [(-3, 0.00035624829487820495), (0, 0.368534581141463), (4, 0.6653936824825177)],
    ),
    (
        0.0,
        [(-3, 0.0744918243607859), (0, 0.6178291772093456), (4, 0.997403406637635)],
        [(-3, 0.0007153803771418574), (0, 0.3129789149995626), (4, 0.48454535977074586)],
    ),
    (
        0.5,
        [(-3, 0.09962403369736428), (0, 0.6657347352460345), (4, 0.9977741392912)],
        [(-3, 0.002901046090352325), (0, 0.2639951942220616), (4, 0.33300806662406895)],
    ),
    (
        1.0,
        [(-3, 0.11051235845013044), (0, 0.6850395556165745), (4, 0.9979224370019627)],
        [(-3, 0.011923006285697623), (0, 0.28689733874959905), (4, 0.32350342867506504)],
    ),
];

#[test]
fn fractional_transforms_of_the_q_exponential() {
    let grid = LatticeGrid::new(-20, 30).unwrap();
    for (a, r_want, w_want) in TRANSFORMS {
        let c = ctx(a);
        let e = sample_q_exponential(grid, 0, &c);
        let r = riemann_liouville(&e, &c).unwrap();
        let w = weyl(&e, &c).unwrap();
        for (m, want) in r_want {
            assert!(rel(r.at(m).re, want) < 1e-11, "R at alpha={a} m={m}: {} vs {want}", r.at(m).re);
        }
        for (m, want) in w_want {
            assert!(rel(w.at(m).re, want) < 1e-11, "W at alpha={a} m={m}: {} vs {want}", w.at(m).re);
        }
    }
}
