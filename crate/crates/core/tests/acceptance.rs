//! The twelve acceptance criteria at their stated tolerances.
//!
//! Each criterion runs as its own test and prints one line:
//! `criterion NN <slug>: PASS|FAIL (k/m checks, t s)`.
//! Run with `cargo test -p gpthide --test acceptance -- --nocapture` to see them.

use gpthide::verify::{run_criterion, CriterionReport, VerifyOptions, CRITERIA, DEFAULT_SEED};

fn run(number: usize) -> CriterionReport {
    let rep = run_criterion(number, &VerifyOptions::new(DEFAULT_SEED))
        .unwrap_or_else(|e| panic!("criterion {number} errored: {e}"));
    let passed = rep.checks.iter().filter(|c| c.pass).count();
    let heuristic = if rep.checks.iter().any(|c| c.heuristic) {
        " [heuristic]"
    } else {
        ""
    };
    println!(
        "criterion {:02} {}{}: {} ({}/{} checks, {:.1} s)",
        number,
        rep.slug,
        heuristic,
        if rep.pass { "PASS" } else { "FAIL" },
        passed,
        rep.checks.len(),
        rep.runtime_ms / 1e3
    );
    for c in &rep.checks {
        if !c.pass {
            println!(
                "    {} measured {:e} expected {:e} tol {:e}",
                c.id, c.measured, c.expected, c.tol
            );
        }
        if let Some(note) = &c.note {
            println!("    note {}: {note}", c.id);
        }
    }
    assert!(!rep.checks.is_empty());
    rep
}

fn assert_criterion(number: usize) {
    let rep = run(number);
    assert!(
        rep.pass,
        "criterion {number} ({}) failed",
        CRITERIA[number - 1]
    );
}

#[test]
fn criterion_01_werner_closed_forms() {
    assert_criterion(1);
}

#[test]
fn criterion_02_werner_ratios() {
    assert_criterion(2);
}

#[test]
fn criterion_03_symmetric_catalog() {
    assert_criterion(3);
}

#[test]
fn criterion_04_constant_identities() {
    assert_criterion(4);
}

#[test]
fn criterion_05_spherical_norms() {
    assert_criterion(5);
}

#[test]
fn criterion_06_tensor_norm_laws() {
    assert_criterion(6);
}

#[test]
fn criterion_07_cubic_sandwich() {
    assert_criterion(7);
}

#[test]
fn criterion_08_teleportation() {
    assert_criterion(8);
}

#[test]
fn criterion_09_isotropic_robustness() {
    assert_criterion(9);
}

#[test]
fn criterion_10_balanced_ratios() {
    assert_criterion(10);
}

#[test]
fn criterion_11_random_subspace() {
    assert_criterion(11);
}

#[test]
fn criterion_12_ledger_werner_sep() {
    assert_criterion(12);
}
