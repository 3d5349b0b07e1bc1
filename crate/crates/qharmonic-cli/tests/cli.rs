use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qharmonic")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap_or(-1)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn error_json(o: &Output) -> serde_json::Value {
    let text = String::from_utf8_lossy(&o.stderr);
    let line = text.lines().last().expect("error line on stderr");
    serde_json::from_str(line).expect("stderr carries JSON")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

/// Column `re` of a function CSV, origin row excluded.
fn re_column(csv: &str) -> Vec<f64> {
    csv.lines().skip(1).filter(|l| !l.starts_with("inf")).map(|l| l.split(',').nth(2).unwrap().parse().unwrap()).collect()
}

#[test]
fn eval_jalpha_has_unit_limit_row() {
    let o = run(&["eval", "jalpha", "--q", "0.5", "--alpha", "0", "--nmin", "-8", "--nmax", "20"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert_eq!(out.lines().next(), Some("n,x,re,im"));
    assert_eq!(out.lines().count(), 1 + 29 + 1);
    let last = out.lines().last().unwrap();
    assert!(last.starts_with("inf,"));
    assert_eq!(last.split(',').nth(2).unwrap().parse::<f64>().unwrap(), 1.0);
}

#[test]
fn bad_parameters_exit_2_with_json() {
    for args in [&["eval", "jalpha", "--q", "1.2"][..], &["eval", "cosq", "--alpha", "-0.7"], &["verify", "bogus"], &["eval", "expq", "--format", "xml"]] {
        let o = run(args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert_eq!(error_json(&o)["exit_code"], 2);
    }
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "# settings\nq = 1.5\nn_min = -2\nn_max = 5\n").unwrap();
    assert_eq!(code(&run(&["eval", "jalpha", "--config", p(&cfg)])), 2);
    let o = run(&["eval", "jalpha", "--config", p(&cfg), "--q", "0.5"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 1 + 8 + 1);
}

#[test]
fn pipelines() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.csv");
    let wf = dir.path().join("w.json");
    assert_eq!(code(&run(&["eval", "gaussian-wavelet", "-o", p(&f)])), 0);
    let original = std::fs::read_to_string(&f).unwrap();

    let copy = run(&["pipeline", "-i", p(&f)]);
    assert_eq!(stdout(&copy), original);

    let back = run(&["pipeline", "fourier", "inv-fourier", "-i", p(&f)]);
    assert_eq!(code(&back), 0);
    let (a, b) = (re_column(&original), re_column(&stdout(&back)));
    let scale = a.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    assert!(a.iter().zip(&b).all(|(x, y)| (x - y).abs() < 1e-9 * scale));

    assert_eq!(code(&run(&["pipeline", "translate:0.25", "convolve:".to_string().as_str(), "-i", p(&f)])), 2);
    let conv = format!("convolve:{}", p(&f));
    assert_eq!(code(&run(&["pipeline", "translate:0.25", &conv, "k2", "-i", p(&f), "-o", p(&wf)])), 0);
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&wf).unwrap()).unwrap();
    assert_eq!(json["n_min"], "-10");
}

#[test]
fn unknown_stage_and_off_lattice_translation_are_config_errors() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.csv");
    assert_eq!(code(&run(&["eval", "expq", "-o", p(&f)])), 0);
    assert_eq!(code(&run(&["pipeline", "fourier", "nonsense", "-i", p(&f)])), 2);
    let o = run(&["pipeline", "translate:0.3", "-i", p(&f)]);
    assert_eq!(code(&o), 2);
    assert!(error_json(&o)["message"].as_str().unwrap().contains("lattice"));
    assert_eq!(code(&run(&["pipeline", "fourier"])), 2);
}

#[test]
fn failing_stage_is_named() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.csv");
    // finite samples whose transform overflows
    let rows: Vec<String> = (-3..=1).map(|n| format!("{n},{},{},0", 0.5f64.powi(n), if n < 1 { "1e308" } else { "1" })).collect();
    std::fs::write(&f, format!("n,x,re,im\n{}\n", rows.join("\n"))).unwrap();
    let o = run(&["pipeline", "rl", "fourier", "-i", p(&f)]);
    assert_eq!(code(&o), 3);
    let e = error_json(&o);
    assert_eq!(e["stage"], "fourier");
    assert_eq!(e["exit_code"], 3);
}

#[test]
fn non_finite_samples_and_unrepresentable_windows_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("nan.csv");
    std::fs::write(&f, "n,x,re,im\n0,1,NaN,0\n1,0.5,1,0\n").unwrap();
    assert_eq!(code(&run(&["pipeline", "fourier", "-i", p(&f)])), 2);
    let o = run(&["eval", "jalpha", "--nmin", "-1100", "--nmax", "0"]);
    assert_eq!(code(&o), 2);
    assert_eq!(error_json(&o)["error"], "invalid_parameter");
}

#[test]
fn slow_products_fail_with_exit_3() {
    let o = run(&["pipeline", "fourier", "-i", "unused.csv", "--q", "0.99", "--max-terms", "64"]);
    assert_eq!(code(&o), 3);
    assert_eq!(error_json(&o)["error"], "non_convergence");
}

#[test]
fn wavelet_round_trip_and_kernel_check() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.csv");
    let plane = dir.path().join("p.json");
    let back = dir.path().join("back.csv");
    assert_eq!(code(&run(&["eval", "expq", "--nmin", "-8", "--nmax", "20", "-o", p(&f)])), 0);
    let g = dir.path().join("g.csv");
    assert_eq!(code(&run(&["eval", "gaussian-wavelet", "-o", p(&g)])), 0);
    let wg = format!("file:{}", p(&g));
    assert_eq!(code(&run(&["wavelet", "analyze", "-i", p(&f), "-o", p(&plane), "--wavelet", &wg])), 0);
    let o = run(&["wavelet", "synthesize", "-i", p(&plane), "-o", p(&back), "--reference", p(&f), "--wavelet", &wg]);
    assert_eq!(code(&o), 0);
    let report: serde_json::Value = serde_json::from_str(String::from_utf8_lossy(&o.stderr).trim()).unwrap();
    assert!(report["reconstruction_rel_l2_error"].as_f64().unwrap() < 1e-4);

    let o = run(&["wavelet", "kernel-check", "-i", p(&plane)]);
    assert_eq!(code(&o), 0);
    let report: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(report["pass"], true);

    let mag = run(&["wavelet", "analyze", "-i", p(&f), "--magnitude"]);
    assert_eq!(stdout(&mag).lines().next(), Some("a,b,abs"));
}

#[test]
fn zero_wavelet_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.csv");
    let z = dir.path().join("z.json");
    assert_eq!(code(&run(&["eval", "expq", "-o", p(&f)])), 0);
    let zero = serde_json::json!({
        "q": 0.5, "alpha": 0.0, "n_min": "-10", "n_max": "30", "role": "wavelet",
        "value_at_zero": [0.0, 0.0], "values": vec![[0.0, 0.0]; 41],
    });
    std::fs::write(&z, zero.to_string()).unwrap();
    let o = run(&["wavelet", "analyze", "-i", p(&f), "--wavelet", &format!("file:{}", p(&z))]);
    assert_eq!(code(&o), 4);
    assert_eq!(error_json(&o)["error"], "not_admissible");
}

#[test]
fn verify_exit_codes_and_json() {
    let o = run(&["verify", "core", "--json"]);
    assert_eq!(code(&o), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(report["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
    assert_eq!(code(&run(&["verify", "all", "--q", "0.5", "--alpha", "0"])), 0);
    let o = run(&["verify", "harmonic", "--q", "0.7", "--alpha", "1"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("warning"));
}
