//! The eight acceptance criteria at full scope, one test each. Run with
//! `--nocapture` to see the per-check lines.

use km_core::verify::{run_criterion, VerifyOptions};

fn criterion(k: u8) {
    let checks = run_criterion(k, &VerifyOptions::complete());
    assert!(!checks.is_empty(), "criterion {k} ran no checks");
    for c in &checks {
        println!("  {} {:<48} {:>8.2}s  {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.seconds, c.detail);
    }
    let failed: Vec<_> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    println!("criterion {k}: {}", if failed.is_empty() { "PASS" } else { "FAIL" });
    assert!(failed.is_empty(), "criterion {k} failed: {failed:?}");
}

#[test]
fn criterion_1_abelianizations() {
    criterion(1);
}

#[test]
fn criterion_2_lattice_images() {
    criterion(2);
}

#[test]
fn criterion_3_mod2_ranks() {
    criterion(3);
}

#[test]
fn criterion_4_reidemeister_schreier() {
    criterion(4);
}

#[test]
fn criterion_5_double_cover() {
    criterion(5);
}

#[test]
fn criterion_6_rewriting() {
    criterion(6);
}

#[test]
fn criterion_7_characters() {
    criterion(7);
}

#[test]
fn criterion_8_oracles_and_properties() {
    criterion(8);
}
