//! Run the complete verification engine programmatically and print a
//! per-suite summary (the `dbc verify` subcommand does the same and emits
//! the full JSON report).

use dbc::num::Tolerance;
use dbc::verify::{run_verification, RunConfig, Suite};
use std::collections::BTreeMap;
use std::time::Instant;

fn main() {
    let cfg = RunConfig {
        n: 3,
        seed: 42,
        samples: 10,
        tol: Tolerance::default(),
        suites: Suite::all(),
    };
    let start = Instant::now();
    let report = run_verification(&cfg);
    let elapsed = start.elapsed().as_secs_f64();
    let mut by_suite: BTreeMap<String, (usize, usize, f64)> = BTreeMap::new();
    for c in &report.checks {
        let e = by_suite.entry(c.suite.clone()).or_insert((0, 0, 0.0));
        e.0 += 1;
        if c.pass {
            e.1 += 1;
        }
        if c.max_dev.is_finite() {
            e.2 = e.2.max(c.max_dev);
        }
    }
    println!("verification at n = {}, seed = {}, {} samples per check:", cfg.n, cfg.seed, cfg.samples);
    for (suite, (total, passed, worst)) in &by_suite {
        println!(
            "  {:<10} {:>3}/{:<3} passed, worst deviation {:.2e}",
            suite, passed, total, worst
        );
    }
    println!(
        "overall: {} ({} checks in {:.1}s)",
        if report.pass { "PASS" } else { "FAIL" },
        report.checks.len(),
        elapsed
    );
    for c in report.checks.iter().filter(|c| !c.pass) {
        println!("  failing: {} (dev {:.3e}, tol {:.1e})", c.id, c.max_dev, c.tol);
    }
}
