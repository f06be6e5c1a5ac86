use twind_core::verify::{run, run_suite, Suite};

fn assert_suite(suite: Suite) {
    let r = run_suite(suite, 7);
    let failed: Vec<_> = r.checks.iter().filter(|c| !c.passed).collect();
    assert!(failed.is_empty(), "{suite}: {failed:#?}");
}

#[test]
fn weyl_suite() {
    assert_suite(Suite::Weyl);
}

#[test]
fn charring_suite() {
    assert_suite(Suite::Charring);
}

#[test]
fn induction_suite() {
    assert_suite(Suite::Induction);
}

#[test]
fn multiplets_suite() {
    assert_suite(Suite::Multiplets);
}

#[test]
fn spinc_suite() {
    assert_suite(Suite::Spinc);
}

#[test]
fn appendix_suites() {
    assert_suite(Suite::AppendixB);
    assert_suite(Suite::AppendixC);
}

#[test]
fn report_is_deterministic() {
    let a = serde_json::to_string(&run(&[Suite::Spinc, Suite::AppendixB], 3)).unwrap();
    let b = serde_json::to_string(&run(&[Suite::AppendixB, Suite::Spinc], 3)).unwrap();
    assert_eq!(a, b);
}
