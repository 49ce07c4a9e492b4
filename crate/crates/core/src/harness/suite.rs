use std::fmt::Write;
use std::time::{Duration, Instant};

use serde::Serialize;

use super::criteria::{criteria, run_criterion, Outcome};
use super::{Config, Exit};

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub config: Config,
    pub pass: bool,
    pub criteria: Vec<Outcome>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn exit(&self) -> Exit {
        if self.pass {
            Exit::Pass
        } else {
            Exit::Property
        }
    }

    /// `criterion | pass/fail | runtime`, one row per criterion.
    pub fn table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "criterion | result |   runtime | checks | description");
        for o in &self.criteria {
            let verdict = if o.pass { "pass" } else { "FAIL" };
            let ms = o.elapsed.as_secs_f64() * 1e3;
            let limit = o.limit_ms.map(|l| format!(" (limit {} s)", l / 1000)).unwrap_or_default();
            let checks = format!("{}/{}", o.checked - o.failed, o.checked);
            let _ = writeln!(s, "{:>9} | {verdict:>6} | {ms:>6.0} ms | {checks:>6} | {}{limit}", o.id, o.title);
        }
        let _ = writeln!(
            s,
            "suite: {} in {:.1} s (seed {:#x}, word size {})",
            if self.pass { "pass" } else { "FAIL" },
            self.elapsed.as_secs_f64(),
            self.config.seed,
            self.config.word_size
        );
        s
    }

    /// Failing records, for a short diagnostic after the table.
    pub fn failures(&self, per_criterion: usize) -> Vec<String> {
        self.criteria
            .iter()
            .flat_map(|o| {
                o.records
                    .iter()
                    .filter(|r| !r.pass())
                    .take(per_criterion)
                    .map(move |r| format!("criterion {}: inputs {} observed {} bound {}", o.id, r.inputs, r.observed, r.bound))
            })
            .collect()
    }
}

/// Runs the selected criteria (all of them for an empty selection) in
/// order.
pub fn run_suite(cfg: &Config, only: &[u8]) -> SuiteReport {
    let start = Instant::now();
    let outcomes: Vec<Outcome> = criteria()
        .iter()
        .filter(|c| only.is_empty() || only.contains(&c.id))
        .map(|c| run_criterion(c, cfg))
        .collect();
    SuiteReport {
        config: cfg.clone(),
        pass: !outcomes.is_empty() && outcomes.iter().all(|o| o.pass),
        criteria: outcomes,
        elapsed: start.elapsed(),
    }
}

/// The suite at `n` consecutive seeds starting from the configured one.
pub fn sweep(cfg: &Config, n: u64, only: &[u8]) -> Vec<SuiteReport> {
    (0..n).map(|i| run_suite(&cfg.clone().with_seed(cfg.seed.wrapping_add(i)), only)).collect()
}
