//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! `RELCOH_EXTENDED=1` runs the sl2 saturation sweep through level 23; `RELCOH_ONLY=1,7`
//! restricts the run to the listed criteria.

use relcoh::repro::{self, ReproConfig};

fn main() {
    let extended = std::env::var("RELCOH_EXTENDED").is_ok_and(|v| v == "1");
    let cfg = if extended { ReproConfig::extended() } else { ReproConfig::default() };
    let only: Vec<String> = std::env::var("RELCOH_ONLY")
        .map(|v| v.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect())
        .unwrap_or_default();
    let summary = repro::run(&cfg, &only, |c| println!("{}", c.line()));
    let failed = summary.criteria.iter().filter(|c| !c.pass).count();
    println!("acceptance: {} passed, {failed} failed", summary.criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
