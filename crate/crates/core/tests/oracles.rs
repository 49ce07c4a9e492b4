//! Cross-checks of evaluator results against independent oracles, and
//! the frozen values they pinned.

mod common;

use cctt::eval::{eval_in, eval_seq};
use cctt::harness::{check_program_bound, Config, InputSource};
use cctt::programs;
use cctt::registry::{default_registry, EvalConfig, Mode};
use cctt::semantics::Semantics;
use cctt::syntax::Expr;

fn pair(x: u64, y: u64) -> Expr {
    Expr::pair(Expr::num(x), Expr::num(y))
}

#[test]
fn gcd_values_match_subtractive_euclid() {
    let prog = programs::gcd(&cctt::registry::default_word_size());
    let reg = default_registry();
    for (x, y) in common::word_pairs(24) {
        let r = eval_seq(&prog.apply(pair(x, y)), &reg, &EvalConfig::default()).unwrap();
        assert_eq!(r.value, Expr::num(common::gcd(x, y)), "gcd({x}, {y})");
    }
}

#[test]
fn fib_values_match_the_recurrence() {
    let prog = programs::fib();
    let reg = default_registry();
    let cfg = EvalConfig::default().with_mode(Mode::Par);
    for n in 0..=12 {
        let r = eval_in(&prog.apply(Expr::num(n)), &reg, &cfg, Mode::Par).unwrap();
        assert_eq!(r.value, Expr::num(common::fib(n as usize)), "fib({n})");
    }
}

/// Spans of `fib n` in parallel mode. By hand: three steps reach the
/// `par`, the two calls run side by side, then five steps for the `par`
/// and one for the sum, so `span(n) = span(n - 1) + 9` and
/// `span(n) = 9n - 6` from n = 2.
const FIB_SPANS: [u64; 11] = [2, 3, 12, 21, 30, 39, 48, 57, 66, 75, 84];

#[test]
fn fib_spans_are_frozen() {
    let prog = programs::fib();
    let reg = default_registry();
    let cfg = EvalConfig::default().with_mode(Mode::Par);
    for (n, want) in FIB_SPANS.iter().enumerate() {
        let r = eval_in(&prog.apply(Expr::num(n as u64)), &reg, &cfg, Mode::Par).unwrap();
        assert_eq!(r.steps, *want, "span of fib({n})");
        if n >= 2 {
            assert_eq!(*want, 9 * n as u64 - 6);
        }
    }
}

#[test]
fn gcd_cost_bound_reads_as_arithmetic() {
    let prog = programs::gcd(&cctt::registry::default_word_size());
    let sem = Semantics::new(default_registry(), EvalConfig::default());
    for (x, y) in common::word_pairs(12) {
        let want = if x == 0 { 5 } else { 8 + 8 * x };
        assert_eq!(sem.measure(&prog.cost, "a", &pair(x, y)).unwrap(), want.into(), "({x}, {y})");
    }
}

#[test]
fn gcd_bound_holds_on_every_word_pair_at_w8() {
    let cfg = Config::default().with_word_size(8u32.into());
    let prog = programs::gcd(&cfg.word_size);
    let inputs: Vec<Expr> = common::word_pairs(8).into_iter().map(|(x, y)| pair(x, y)).collect();
    let rep = check_program_bound(&prog, &prog.cost, InputSource::Exhaustive, &inputs, Mode::Seq, &cfg);
    assert!(rep.pass, "{:?}", rep.witness());
    assert_eq!(rep.samples.len(), 64);
    let tight = Expr::cff2("-", prog.cost.clone(), Expr::num(1));
    let rep = check_program_bound(&prog, &tight, InputSource::Exhaustive, &inputs, Mode::Seq, &cfg);
    let failing: Vec<&str> = rep.samples.iter().filter(|s| s.failure.is_some()).map(|s| s.input.as_str()).collect();
    assert_eq!(failing.len(), 8, "{failing:?}");
    assert!(failing.iter().all(|s| s.starts_with("(pair 0 ")));
}
