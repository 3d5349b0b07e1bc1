use qharmonic::verify::{run, Suite, VerifyConfig};
use qharmonic::QContext;

#[test]
fn all_suites_pass_at_half() {
    for alpha in [-0.25, 0.0, 0.5, 1.0] {
        let cfg = VerifyConfig::new(QContext::new(0.5, alpha).unwrap());
        let report = run(&Suite::ALL, &cfg);
        println!("{}", report.to_table());
        assert!(report.all_pass(), "alpha = {alpha}");
    }
}
