//! One test per acceptance criterion; each prints a `[PASS]` or `[FAIL]` line.
//! Run with `--nocapture` to see the table.

use modgraph::selftest::{criterion, SelftestOptions};

fn run(id: u8) {
    let outcome = criterion(id, &SelftestOptions::default());
    println!("{}", outcome.line());
    assert!(outcome.passed, "{}", outcome.line());
}

#[test]
fn ac01_kirchhoff_identity() {
    run(1);
}

#[test]
fn ac02_ngon_thresholds() {
    run(2);
}

#[test]
fn ac03_doubled_family() {
    run(3);
}

#[test]
fn ac04_density_equals_lp_value() {
    run(4);
}

#[test]
fn ac05_witness_certificate() {
    run(5);
}

#[test]
fn ac06_optimal_contraction() {
    run(6);
}

#[test]
fn ac07_edge_ratio_lower_bound() {
    run(7);
}

#[test]
fn ac08_bridge_invariance() {
    run(8);
}

#[test]
fn ac09_probe_verdicts() {
    run(9);
}

#[test]
fn ac10_inverse_decay() {
    run(10);
}

#[test]
fn ac11_search_witness() {
    run(11);
}

#[test]
fn injected_fault_is_reported() {
    let outcome = criterion(1, &SelftestOptions { quick: true, inject_fault: true });
    let tag = if outcome.passed { "FAIL" } else { "PASS" };
    println!("[{tag}] fault injection is detected: {}", outcome.detail);
    assert!(!outcome.passed);
}
