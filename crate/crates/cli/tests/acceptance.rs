use stablecut_cli::acceptance::{run, TITLES};

const SEED: u64 = 1;

fn check(id: usize) {
    let r = run(id, SEED).unwrap_or_else(|e| panic!("criterion {id} could not run: {e}"));
    let verdict = if r.passed { "PASS" } else { "FAIL" };
    println!("{verdict} criterion {id:>2} {}: {}", TITLES[id - 1], r.details);
    assert!(r.passed, "criterion {id} failed: {:#}", r.details);
}

#[test]
fn criterion_01_oracle_cross_validation() {
    check(1);
}

#[test]
fn criterion_02_dense_solver() {
    check(2);
}

#[test]
fn criterion_03_metric_reduction() {
    check(3);
}

#[test]
fn criterion_04_ball_sides() {
    check(4);
}

#[test]
fn criterion_05_cut_edge_bound() {
    check(5);
}

#[test]
fn criterion_06_sqrt_solver() {
    check(6);
}

#[test]
fn criterion_07_spanning_tree() {
    check(7);
}

#[test]
fn criterion_08_spectral_certificate() {
    check(8);
}

#[test]
fn criterion_09_gw_battery() {
    check(9);
}

#[test]
fn criterion_10_stable_cut_count() {
    check(10);
}
