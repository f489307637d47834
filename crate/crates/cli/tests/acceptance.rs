//! Acceptance gate: runs every verification criterion and prints one
//! pass/fail line each. Run with `cargo test --test acceptance -- --nocapture`.

use qindex_cli::verify;

#[test]
fn acceptance() {
    let outcomes = verify::run_all(true);
    let mut failed = Vec::new();
    for o in &outcomes {
        println!("{}", o.line());
        if o.result.is_err() {
            failed.push(o.name);
        }
    }
    assert!(failed.is_empty(), "criteria failed: {:?}", failed);
}
