//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
//!
//! All criteria run through the library's verification suites at their full
//! default sizes (seed 7, 300 random instances, |V| <= 9 exhaustive sweeps).
//! The suites are computed once and shared; criteria with runtime targets
//! re-run their suite fresh under a timer.

use spectral_bounds::verify::{run_suite, VerifyConfig, VerifyReport};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

static REPORT: OnceLock<(String, VerifyReport)> = OnceLock::new();

fn full_report() -> &'static (String, VerifyReport) {
    REPORT.get_or_init(|| {
        let cfg = VerifyConfig::default();
        let report = run_suite("all", &cfg).expect("suite runs");
        (report.to_json(), report)
    })
}

fn criterion(id: usize, name: &str, suite: &str) {
    let (_, report) = full_report();
    let s = report
        .suites
        .iter()
        .find(|s| s.suite == suite)
        .unwrap_or_else(|| panic!("suite {suite} missing"));
    println!(
        "ACCEPTANCE {id:>2} {name}: {} (cases = {}, counterexamples = {})",
        if s.passed { "PASS" } else { "FAIL" },
        s.cases,
        s.counterexamples
    );
    for c in &s.checks {
        println!(
            "              [{}] {} {}",
            if c.passed { "ok" } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    assert!(s.passed, "criterion {id} failed: {s:?}");
}

fn timed_suite(suite: &str, budget: Duration) -> Duration {
    let cfg = VerifyConfig::default();
    let start = Instant::now();
    let report = run_suite(suite, &cfg).expect("suite runs");
    let elapsed = start.elapsed();
    assert!(report.passed, "{suite} failed under timing run");
    assert!(
        elapsed <= budget,
        "{suite} took {elapsed:?}, budget {budget:?}"
    );
    elapsed
}

#[test]
fn criterion_01_main_theorem_exhaustive_soundness() {
    criterion(1, "main-theorem exhaustive soundness", "main");
    let elapsed = timed_suite("main", Duration::from_secs(600));
    println!("              runtime {elapsed:?} (target < 10 min)");
}

#[test]
fn criterion_02_dirichlet_transplant_soundness() {
    criterion(2, "Dirichlet-transplant soundness", "dirichlet");
}

#[test]
fn criterion_03_lemma_chain_exact_p2() {
    criterion(3, "lemma chain (p = 2 exact)", "lemma-chain");
}

#[test]
fn criterion_04_sandwich() {
    criterion(4, "sandwich nu <= nu-hat <= 2^p nu", "sandwich");
}

#[test]
fn criterion_05_spectrum_invariants() {
    criterion(5, "spectrum invariants", "spectrum");
}

#[test]
fn criterion_06_federer_fleming_p1() {
    criterion(6, "Federer-Fleming p = 1", "federer-fleming");
}

#[test]
fn criterion_07_chain_of_cliques_trend() {
    criterion(7, "chain-of-cliques trend", "chain-trend");
    let elapsed = timed_suite("chain-trend", Duration::from_secs(300));
    println!("              runtime {elapsed:?} (target < 5 min)");
}

#[test]
fn criterion_08_sharpness_envelope() {
    criterion(8, "sharpness envelope", "sharpness");
    let elapsed = timed_suite("sharpness", Duration::from_secs(900));
    println!("              runtime {elapsed:?} (target < 15 min)");
}

#[test]
fn criterion_09_inscribed_radius() {
    criterion(9, "inscribed radius", "inrad");
}

#[test]
fn criterion_10_determinism() {
    let (first, _) = full_report();
    let cfg = VerifyConfig::default();
    let second = run_suite("all", &cfg).expect("suite runs").to_json();
    let identical = *first == second;
    println!(
        "ACCEPTANCE 10 determinism (verify --suite all --seed 7 twice): {}",
        if identical { "PASS" } else { "FAIL" }
    );
    assert!(identical, "reports differ between identical runs");
}
