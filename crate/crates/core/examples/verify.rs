//! Runs every property battery and prints one line per check.

use domsat::verify::{run_suite, Suite};

fn main() {
    let mut all = true;
    for suite in [
        Suite::Facts,
        Suite::Connectivity,
        Suite::LemmaTrees,
        Suite::Constructions,
        Suite::Formulas,
    ] {
        let report = run_suite(suite);
        for check in &report.checks {
            let mark = if check.passed() { "pass" } else { "FAIL" };
            println!("{:<13} {mark} {:>6} {}", suite.as_str(), check.cases, check.name);
        }
        all &= report.passed();
    }
    std::process::exit(if all { 0 } else { 1 });
}
