//! Running the verification suites from code (the `verify` subcommand wraps
//! exactly this). Quick sizes keep the example fast; drop `quick` for the
//! full acceptance-scale sweeps.
//!
//! ```bash
//! cargo run --release --example verification_suites
//! ```

use spectral_bounds::verify::{run_suite, VerifyConfig, SUITE_NAMES};

fn main() -> spectral_bounds::Result<()> {
    let cfg = VerifyConfig {
        seed: 7,
        max_v: 7,
        trials: 20,
        quick: true,
    };
    println!("available suites: {SUITE_NAMES:?}\n");
    for suite in ["main", "sandwich", "federer-fleming", "chain-trend"] {
        let report = run_suite(suite, &cfg)?;
        for s in &report.suites {
            println!(
                "{}: {} ({} cases, {} counterexamples)",
                s.suite,
                if s.passed { "PASS" } else { "FAIL" },
                s.cases,
                s.counterexamples
            );
            for c in &s.checks {
                println!("  [{}] {} {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail);
            }
        }
    }
    Ok(())
}
