//! The twelve acceptance criteria, one pass/fail line each.

use mt_core::suite::{run_all, CHECKS};

#[test]
fn acceptance_criteria() {
    let outcomes = run_all(0);
    assert_eq!(outcomes.len(), CHECKS.len());
    for o in &outcomes {
        println!("{} ({:.2?})", o.line(), o.elapsed);
    }
    let failed: Vec<u32> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
