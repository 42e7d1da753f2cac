//! Acceptance suite: each criterion runs with its counts and prints one
//! PASS/FAIL line (visible with `--nocapture`).

use std::time::{Duration, Instant};

use endoclass::selftest::{self, CriterionReport};

const SEED: u64 = 0;

fn run(report: CriterionReport) {
    println!(
        "{} criterion {} ({}): {}",
        if report.ok { "PASS" } else { "FAIL" },
        report.id,
        report.name,
        report.details
    );
    assert!(
        report.ok,
        "criterion {} ({}) failed: {}",
        report.id, report.name, report.details
    );
}

#[test]
fn criterion_1_snf_certificates() {
    let start = Instant::now();
    run(selftest::criterion_snf_certificates(SEED));
    assert!(
        start.elapsed() < Duration::from_secs(30),
        "runtime budget exceeded: {:?}",
        start.elapsed()
    );
}

#[test]
fn criterion_2_classification_completeness() {
    run(selftest::criterion_classification_completeness(SEED));
}

#[test]
fn criterion_3_fext_round_trip() {
    let start = Instant::now();
    run(selftest::criterion_fext_round_trip(SEED));
    assert!(
        start.elapsed() < Duration::from_secs(60),
        "runtime budget exceeded: {:?}",
        start.elapsed()
    );
}

#[test]
fn criterion_4_atom_value_table() {
    let report = selftest::criterion_atom_value_table();
    assert_eq!(report.cases, 108, "the table has 108 entries");
    run(report);
}

#[test]
fn criterion_5_f_prime_membership() {
    run(selftest::criterion_f_prime_membership(SEED));
}

#[test]
fn criterion_6_functor_devissage() {
    run(selftest::criterion_functor_devissage(SEED));
}

#[test]
fn criterion_7_nilpotent_devissage() {
    run(selftest::criterion_nilpotent_devissage(SEED));
}

#[test]
fn criterion_8_hom_dimension_law() {
    run(selftest::criterion_hom_dimension());
}

#[test]
fn criterion_9_factorization_soundness() {
    run(selftest::criterion_factorization(SEED));
}
