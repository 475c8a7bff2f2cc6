//! One PASS/FAIL line per acceptance criterion. Run with `--nocapture` to
//! see the lines; each criterion is also its own test so failures are
//! reported individually.

use g6q_core::selftest::{criterion, summary_line, DEFAULT_SEED};

fn check(id: u8) {
    let r = criterion(id, DEFAULT_SEED).expect("criterion runs");
    println!("{}", summary_line(&r));
    for l in &r.lines {
        println!("    {} {} [{:.3e} < {:.0e}]", if l.pass { "ok  " } else { "FAIL" }, l.name, l.deviation, l.tolerance);
    }
    for l in &r.reported {
        println!("    info {} [{:.3e}, {}]", l.name, l.deviation, if l.pass { "PASS" } else { "FAIL" });
    }
    assert!(r.pass(), "{}", summary_line(&r));
}

#[test]
fn criterion_01_algebra_axioms() {
    check(1);
}

#[test]
fn criterion_02_g3_closed_forms() {
    check(2);
}

#[test]
fn criterion_03_isomorphism_sweep() {
    check(3);
}

#[test]
fn criterion_04_homomorphism() {
    check(4);
}

#[test]
fn criterion_05_singlet_pipeline() {
    check(5);
}

#[test]
fn criterion_06_purity_inequalities() {
    check(6);
}

#[test]
fn criterion_07_cartan_sweep() {
    check(7);
}

#[test]
fn criterion_08_factorizations() {
    check(8);
}

#[test]
fn criterion_09_conjugation_tables() {
    check(9);
}

#[test]
fn criterion_10_kak() {
    check(10);
}

#[test]
fn criterion_11_sequence_check() {
    check(11);
}

#[test]
fn criterion_12_channels() {
    check(12);
}
