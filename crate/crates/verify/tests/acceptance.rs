//! One line per acceptance criterion; the target fails if any criterion fails
//! or overruns its time budget.

use cumdev_verify::{run_suite, Suite};

#[test]
fn acceptance() {
    println!();
    let results = run_suite(Suite::Full, |r| println!("{r}"));
    let failed: Vec<String> = results.iter().filter(|r| !r.ok()).map(|r| format!("{} ({})", r.id, r.name)).collect();
    let passed = results.len() - failed.len();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    assert!(failed.is_empty(), "failing criteria: {}", failed.join(", "));
}
