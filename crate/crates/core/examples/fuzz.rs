//! Seeded invariant suites. A failing trial is reported with its own seed
//! and an input digest so it can be replayed in isolation.
//!
//! ```bash
//! cargo run --release --example fuzz -- 2000 42
//! ```

use total_coherence::cli::fuzz::{run_suite, Suite};

fn main() {
    let mut args = std::env::args().skip(1);
    let trials = args.next().and_then(|s| s.parse().ok()).unwrap_or(500);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);

    for suite in Suite::ALL {
        let r = run_suite(suite, trials, seed);
        println!(
            "{:<11} trials = {trials}  failures = {}  worst slack = {:.3e}",
            suite.name(),
            r.failures.len(),
            r.worst_slack
        );
    }
}
