//! Every acceptance criterion at its stated tolerance, one line each.

use permbinom_cli::selftest;

#[test]
fn acceptance() {
    let outcomes = selftest::run_all();
    for o in &outcomes {
        println!("{}", o.line());
    }
    let failed: Vec<u8> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    println!("{} of {} criteria passed", outcomes.len() - failed.len(), outcomes.len());
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
