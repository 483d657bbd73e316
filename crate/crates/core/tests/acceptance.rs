//! Runs the ten numbered acceptance criteria and prints one verdict line
//! each. Run with `cargo test --test acceptance -- --nocapture` to see the
//! lines even on success.

use romik_core::selftest::run_all;

#[test]
fn acceptance_criteria() {
    let results = run_all();
    for r in &results {
        println!("{r}");
    }
    let failed: Vec<_> = results.iter().filter(|r| !r.pass).collect();
    assert!(
        failed.is_empty(),
        "failed criteria: {:?}",
        failed.iter().map(|r| r.index).collect::<Vec<_>>()
    );
}
