//! Runs the ten acceptance criteria and prints one pass/fail line per
//! criterion, then repeats the suite over ten seeds and at word size 8.
//! Runs without the libtest harness so the lines always show.

use std::process::ExitCode;

use cctt::harness::{criteria, run_suite, sweep, Config, SuiteReport};

fn show(label: &str, report: &SuiteReport) {
    for line in report.failures(3) {
        println!("  {line}");
    }
    println!("{label}: {} ({:.1} s)", if report.pass { "pass" } else { "FAIL" }, report.elapsed.as_secs_f64());
}

fn main() -> ExitCode {
    let cfg = Config::default();
    let report = run_suite(&cfg, &[]);
    let mut ok = report.pass && report.criteria.len() == criteria().len();
    for o in &report.criteria {
        println!(
            "criterion {:>2}: {} ({}/{} checks, {:.0} ms) {}",
            o.id,
            if o.pass { "pass" } else { "FAIL" },
            o.checked - o.failed,
            o.checked,
            o.elapsed.as_secs_f64() * 1e3,
            o.title
        );
    }
    show("suite at the default seed", &report);

    for r in sweep(&cfg.clone().with_seed(cfg.seed + 1), 9, &[]) {
        ok &= r.pass;
        show(&format!("suite at seed {:#x}", r.config.seed), &r);
    }
    let w8 = run_suite(&cfg.clone().with_word_size(8u32.into()), &[]);
    ok &= w8.pass;
    show("suite at word size 8", &w8);

    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
