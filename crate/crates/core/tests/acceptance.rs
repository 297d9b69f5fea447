//! Runs the twelve manifest checks and prints one PASS/FAIL line for each.

use comatroid::manifest::{run_check, CHECKS, DEFAULT_SEED};

fn main() {
    let mut failed = 0;
    for id in 1..=CHECKS.len() {
        let outcome = run_check(id, DEFAULT_SEED);
        println!(
            "{}  [{:.1}s]",
            outcome.line(),
            outcome.elapsed.as_secs_f64()
        );
        failed += usize::from(!outcome.passed);
    }
    println!(
        "{} of {} checks passed",
        CHECKS.len() - failed,
        CHECKS.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
