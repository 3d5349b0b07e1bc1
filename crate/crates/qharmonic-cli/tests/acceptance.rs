//! Acceptance run: one pass/fail line per criterion.
//!
//! Criteria 1-12 are read off the identity checks of `qharmonic::verify` at q = 0.5 and
//! alpha in {-0.25, 0, 0.5, 1} (criterion 3 also at q = 0.3 and 0.7). Criterion 13 drives
//! the binary.

use std::process::{Command, ExitCode};

use qharmonic::verify::{run, CheckResult, Suite, VerifyConfig, VerifyReport};
use qharmonic::QContext;

const ALPHAS: [f64; 4] = [-0.25, 0.0, 0.5, 1.0];

struct Outcome {
    pass: bool,
    detail: String,
}

fn report(q: f64, alpha: f64, suites: &[Suite]) -> VerifyReport {
    let ctx = QContext::new(q, alpha).expect("valid parameters");
    run(suites, &VerifyConfig::new(ctx))
}

/// Every listed check must pass in every report. The detail names the worst offender.
fn judge(reports: &[VerifyReport], ids: &[&str]) -> Outcome {
    let mut failed: Vec<(f64, f64, &CheckResult)> = vec![];
    let mut worst: Option<(f64, f64, &CheckResult)> = None;
    for r in reports {
        for id in ids {
            let Some(c) = r.get(id) else {
                return Outcome { pass: false, detail: format!("check {id} missing") };
            };
            if !c.pass {
                failed.push((r.q, r.alpha, c));
            }
            let ratio = c.residual / c.tolerance.max(f64::MIN_POSITIVE);
            if worst.map(|w| ratio > w.2.residual / w.2.tolerance.max(f64::MIN_POSITIVE)).unwrap_or(true) {
                worst = Some((r.q, r.alpha, c));
            }
        }
    }
    if let Some(&(q, a, c)) = failed.first() {
        let mut d = format!("{} of {} fail, e.g. {} at q={q} alpha={a}: residual {:.3e} vs {:.1e}", failed.len(), reports.len() * ids.len(), c.id, c.residual, c.tolerance);
        if let Some(n) = &c.note {
            d += &format!(" ({n})");
        }
        let mut configs: Vec<String> = failed.iter().map(|f| format!("q={}", f.0)).collect();
        configs.dedup();
        d += &format!("; failing configurations: {}", configs.join(", "));
        return Outcome { pass: false, detail: d };
    }
    let (q, a, c) = worst.expect("at least one check");
    Outcome { pass: true, detail: format!("worst {} at q={q} alpha={a}: {:.3e} (tol {:.1e})", c.id, c.residual, c.tolerance) }
}

fn cli(args: &[&str]) -> i32 {
    Command::new(env!("CARGO_BIN_EXE_qharmonic"))
        .args(args)
        .output()
        .expect("binary runs")
        .status
        .code()
        .unwrap_or(-1)
}

fn cli_contract() -> Outcome {
    let dir = tempfile::tempdir().expect("temp dir");
    let f = dir.path().join("f.csv");
    let z = dir.path().join("zero.csv");
    let fs = f.to_str().unwrap();
    let zs = z.to_str().unwrap();
    let mut cases = vec![];
    cases.push(("verify all", cli(&["verify", "all"]), 0));
    cases.push(("eval jalpha --q 1.2", cli(&["eval", "jalpha", "--q", "1.2"]), 2));
    let made = cli(&["eval", "expq", "--nmin", "-8", "--nmax", "20", "-o", fs]);
    let zero: String = std::iter::once("n,x,re,im".to_string())
        .chain((-10..=30).map(|n| format!("{n},{},0,0", 0.5f64.powi(n))))
        .collect::<Vec<_>>()
        .join("\n");
    std::fs::write(&z, zero).expect("write zero wavelet");
    cases.push(("eval expq", made, 0));
    let wz = format!("file:{zs}");
    cases.push(("wavelet analyze with g = 0", cli(&["wavelet", "analyze", "-i", fs, "--wavelet", &wz]), 4));
    cases.push(("verify harmonic --q 0.7 --alpha 1", cli(&["verify", "harmonic", "--q", "0.7", "--alpha", "1"]), 1));
    let bad: Vec<String> = cases.iter().filter(|c| c.1 != c.2).map(|c| format!("{} exited {} (want {})", c.0, c.1, c.2)).collect();
    if bad.is_empty() {
        Outcome { pass: true, detail: cases.iter().map(|c| format!("{} -> {}", c.0, c.1)).collect::<Vec<_>>().join(", ") }
    } else {
        Outcome { pass: false, detail: bad.join("; ") }
    }
}

fn main() -> ExitCode {
    let half: Vec<VerifyReport> = ALPHAS.iter().map(|&a| report(0.5, a, &Suite::ALL)).collect();
    let special: Vec<VerifyReport> =
        [0.3, 0.5, 0.7].iter().flat_map(|&q| ALPHAS.iter().map(move |&a| report(q, a, &[Suite::Special]))).collect();

    let criteria: Vec<(u32, &str, Outcome)> = vec![
        (1, "q-Gamma recurrence", judge(&half, &["core.gamma_recurrence"])),
        (2, "eigenfunction of the q-Bessel operator", judge(&half, &["special.eigenfunction"])),
        (3, "Bessel bounds on every window point", judge(&special, &["special.bessel_bound_1", "special.bessel_bound_2"])),
        (4, "orthogonality", judge(&half, &["harmonic.orthogonality_diagonal", "harmonic.orthogonality_off_diagonal"])),
        (5, "Plancherel scaling and F o F", judge(&half, &["harmonic.plancherel_scaling", "harmonic.fourier_twice"])),
        (
            6,
            "translation identities",
            judge(&half, &["harmonic.product_formula", "harmonic.translation_diagonalization", "harmonic.translation_self_adjoint"]),
        ),
        (7, "convolution theorem and norm identity", judge(&half, &["harmonic.convolution_theorem", "harmonic.convolution_norm_identity"])),
        (8, "Gaussian transform and admissibility bound", judge(&half, &["special.gaussian_fourier", "special.gaussian_admissibility_bound"])),
        (9, "wavelet Plancherel, Parseval, reconstruction", judge(&half, &["wavelet.plancherel", "wavelet.parseval", "wavelet.reconstruction"])),
        (10, "reproducing kernel and separation", judge(&half, &["wavelet.reproducing_kernel", "wavelet.kernel_separation"])),
        (
            11,
            "fractional operator identities",
            judge(
                &half,
                &[
                    "fractional.factorization",
                    "fractional.intertwining",
                    "fractional.weyl_of_bessel_convolution",
                    "fractional.rl_of_cosine_convolution",
                    "fractional.k1_commutes_with_cosine_convolution",
                    "fractional.k2_commutes_with_bessel_convolution",
                    "fractional.k1_dilation_law",
                    "fractional.k2_dilation_law",
                ],
            ),
        ),
        (
            12,
            "inversion formulas",
            judge(
                &half,
                &[
                    "fractional.inversion_r_k1_w",
                    "fractional.inversion_r_w_k2",
                    "fractional.inversion_w_r_k1",
                    "fractional.inversion_w_k2_r",
                    "fractional.wavelet_inversion_weyl",
                    "fractional.wavelet_inversion_rl",
                ],
            ),
        ),
        (13, "CLI exit codes", cli_contract()),
    ];

    let mut all = true;
    for (n, name, o) in &criteria {
        all &= o.pass;
        println!("criterion {n:>2} {}: {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    let failed = criteria.iter().filter(|c| !c.2.pass).count();
    println!("\n{} criteria, {} passed, {} failed", criteria.len(), criteria.len() - failed, failed);
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
