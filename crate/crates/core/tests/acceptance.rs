//! Acceptance suite: each test corresponds to one criterion of the
//! project checklist and asserts the matching check of the reference
//! verification suite.  The suite is computed once and shared, so the
//! eleven tests report individually while the heavy lifting (transfer
//! runs for k = 3 and 4, recurrence mining, minimality certification)
//! happens a single time.

use std::thread;

use once_cell::sync::Lazy;

use census_core::{run_checks, CheckOutcome, VerifyConfig, VerifyScope, VerifySummary};

static SUMMARY: Lazy<VerifySummary> = Lazy::new(|| {
    let threads = thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    run_checks(&VerifyConfig { threads, seed: 7, scope: VerifyScope::Full })
});

fn outcome(name: &str) -> &'static CheckOutcome {
    SUMMARY
        .checks
        .iter()
        .find(|c| c.name == name)
        .unwrap_or_else(|| panic!("the verification suite has no check named {name}"))
}

fn assert_criterion(name: &str) {
    let c = outcome(name);
    let note = c.annotation.as_deref().map(|a| format!(" [note: {a}]")).unwrap_or_default();
    println!("{} {} — {}{} ({:.1}s)", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail, note, c.seconds);
    assert!(c.pass, "{} — {}{}", c.name, c.detail, note);
}

#[test]
fn criterion_01_catalog_counts() {
    assert_criterion("catalog-counts");
}

#[test]
fn criterion_02_oracle_agreement() {
    assert_criterion("oracle-agreement");
}

#[test]
fn criterion_03_pipeline_counts() {
    assert_criterion("pipeline-counts");
}

#[test]
fn criterion_04_transfer_step_soundness() {
    assert_criterion("transfer-step-soundness");
}

#[test]
fn criterion_05_scc_structure() {
    assert_criterion("scc-structure");
}

#[test]
fn criterion_06_class_polynomials() {
    assert_criterion("class-polynomials");
}

#[test]
fn criterion_07_fixture_systems() {
    assert_criterion("fixture-systems");
}

#[test]
fn criterion_08_census_recurrence() {
    assert_criterion("census-recurrence");
}

#[test]
fn criterion_09_minimality() {
    assert_criterion("minimality");
}

#[test]
fn criterion_10_parity_split() {
    assert_criterion("parity-split");
}

#[test]
fn criterion_11_reachability_of_failures() {
    assert_criterion("reachability-of-failures");
}

#[test]
fn the_suite_has_exactly_the_eleven_criteria_and_is_not_partial() {
    assert!(!SUMMARY.partial);
    assert_eq!(SUMMARY.checks.len(), 11);
}
