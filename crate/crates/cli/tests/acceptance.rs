//! Acceptance suite as a test target: one test per criterion, at full
//! instance counts and the stated tolerances. Each test prints its
//! measured-vs-threshold lines.
//!
//! Criterion 6b is expected to fail: the homoclinic preset's radial
//! contraction collapses exponentially, so the trajectory is captured by the
//! circle equilibrium after a single mark passage and no recurrence at a
//! measurable return period exists in the tail window (see the note on
//! `acceptance::criterion_6b`). The check is implemented exactly as stated
//! and reports that failure rather than weakening the property.

use semistab::acceptance::{
    criterion_1, criterion_10, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6a,
    criterion_6b, criterion_7, criterion_8, criterion_9, CriterionOutcome, Suite,
};

fn assert_outcome(outcome: CriterionOutcome) {
    println!(
        "criterion {} — {} ({:.2}s)",
        outcome.id, outcome.name, outcome.seconds
    );
    for line in &outcome.details {
        println!("  {line}");
    }
    assert!(
        outcome.passed,
        "criterion {} ({}) failed:\n{}",
        outcome.id,
        outcome.name,
        outcome.details.join("\n")
    );
}

#[test]
fn acceptance_01_cantor_dichotomy() {
    assert_outcome(criterion_1(Suite::Full));
}

#[test]
fn acceptance_02_plancherel_identity() {
    assert_outcome(criterion_2(Suite::Full));
}

#[test]
fn acceptance_03_eigenvalue_detection_chain() {
    assert_outcome(criterion_3(Suite::Full));
}

#[test]
fn acceptance_04_resolvent_square_integrability() {
    assert_outcome(criterion_4(Suite::Full));
}

#[test]
fn acceptance_05_foguel_splitting() {
    assert_outcome(criterion_5(Suite::Full));
}

#[test]
fn acceptance_06a_homoclinic_trajectory_and_cesaro_decay() {
    assert_outcome(criterion_6a(Suite::Full));
}

#[test]
fn acceptance_06b_homoclinic_tail_recurrence() {
    assert_outcome(criterion_6b(Suite::Full));
}

#[test]
fn acceptance_07_cogenerator_transfer() {
    assert_outcome(criterion_7(Suite::Full));
}

#[test]
fn acceptance_08_mixing_diagnostics() {
    assert_outcome(criterion_8(Suite::Full));
}

#[test]
fn acceptance_09_mean_ergodic_projection() {
    assert_outcome(criterion_9(Suite::Full));
}

#[test]
fn acceptance_10_cross_module_coherence() {
    assert_outcome(criterion_10(Suite::Full));
}
