//! Runs the full acceptance suite and prints one line per criterion.

use cgt_core::acceptance::run_all;

#[test]
fn acceptance_suite() {
    let results = run_all();
    let mut failed = 0;
    for r in &results {
        println!("{}", r.line());
        if !r.passed {
            failed += 1;
        }
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
