use std::time::Instant;

use qforms_core::suites;

fn assert_all(name: &str, checks: Vec<suites::SuiteCheck>) {
    let failed: Vec<_> = checks.iter().filter(|c| !c.passed).collect();
    assert!(failed.is_empty(), "{name}: {failed:#?}");
}

#[test]
fn identity_suite() {
    let t = Instant::now();
    assert_all("identities", suites::identities());
    eprintln!("identities: {:?}", t.elapsed());
}

#[test]
fn oracle_suite() {
    let t = Instant::now();
    assert_all("oracle", suites::oracle(2024));
    eprintln!("oracle: {:?}", t.elapsed());
}
