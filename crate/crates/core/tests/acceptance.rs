//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. All comparisons are exact equalities of canonical scalars; the
//! two timed checks assert their stated wall-clock budgets.

use lamdet::verify;

fn assert_report(r: verify::CheckReport) {
    println!("{}", r.line());
    assert!(r.passed, "{}", r.line());
}

#[test]
fn criterion_01_three_way_oracle() {
    let r = verify::three_way_oracle(25, 4, 0xACCE97);
    assert!(
        r.millis < 120_000,
        "three-way oracle exceeded its two-minute budget: {} ms",
        r.millis
    );
    assert_report(r);
}

#[test]
fn criterion_02_symbolic_golden_identities() {
    assert_report(verify::symbolic_golden_identities());
}

#[test]
fn criterion_03_counting() {
    assert_report(verify::counting_checks());
}

#[test]
fn criterion_04_order5_regression() {
    assert_report(verify::order5_regression());
}

#[test]
fn criterion_05_compatible_pair_sums() {
    assert_report(verify::compatible_pair_sums(4));
}

#[test]
fn criterion_06_two_periodic() {
    assert_report(verify::two_periodic_identities(4));
}

#[test]
fn criterion_07_periodicity_table() {
    let r = verify::periodicity_table();
    assert!(
        r.millis < 60_000,
        "periodicity table exceeded its one-minute budget: {} ms",
        r.millis
    );
    assert_report(r);
}

#[test]
fn criterion_08_periodic_closed_forms() {
    assert_report(verify::periodic_closed_forms());
}

#[test]
fn criterion_09_elliptic_and_somos() {
    assert_report(verify::elliptic_and_somos());
}

#[test]
fn criterion_10_applications() {
    assert_report(verify::applications());
}

#[test]
fn criterion_11_shuffle() {
    assert_report(verify::shuffle_checks(0xACCE97));
}

#[test]
fn criterion_12_performance_smoke() {
    assert_report(verify::performance_smoke(0xACCE97));
}
