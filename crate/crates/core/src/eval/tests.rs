use num_bigint::BigUint;
use proptest::prelude::*;

use super::*;
use crate::gen::TermGen;
use crate::programs;
use crate::registry::{default_registry, default_word_size, EvalConfig, Mode};
use crate::syntax::parse;

fn p(s: &str) -> Expr {
    parse(s).unwrap()
}

fn cfg() -> EvalConfig {
    EvalConfig::default()
}

fn small_word(w: u64) -> EvalConfig {
    cfg().with_word_size(BigUint::from(w))
}

#[test]
fn projection_steps_once() {
    let reg = default_registry();
    assert_eq!(step_seq(&p("(fst (pair 0 1))"), &reg, &cfg()).unwrap(), Some(Expr::num(0)));
    assert_eq!(step_seq(&p("(snd (pair 0 1))"), &reg, &cfg()).unwrap(), Some(Expr::num(1)));
    assert_eq!(step_seq(&p("(pair 0 1)"), &reg, &cfg()).unwrap(), None);
}

#[test]
fn guarded_arithmetic() {
    let reg = default_registry();
    let r = eval_seq(&p("(arith % 7 3)"), &reg, &cfg()).unwrap();
    assert_eq!((r.value, r.steps), (Expr::num(1), 1));

    let w = default_word_size();
    let e = Expr::arith("+", Expr::Num(w.clone()), Expr::num(1));
    match step_seq(&e, &reg, &cfg()) {
        Err(StepError { reason: StuckReason::WordGuard { operand }, .. }) => assert_eq!(operand, w),
        other => panic!("expected the word guard, got {other:?}"),
    }
    // cff2 carries no guard
    let e = Expr::cff2("+", Expr::Num(w.clone()), Expr::num(1));
    assert_eq!(eval_seq(&e, &reg, &cfg()).unwrap().value, Expr::Num(w + 1u32));
}

#[test]
fn partial_functions_get_stuck() {
    let reg = default_registry();
    let err = eval_seq(&p("(cff2 % 3 0)"), &reg, &cfg()).unwrap_err();
    assert!(matches!(err, EvalError::Stuck { steps: 0, .. }));
    let err = eval_seq(&p("(cff2 + 1 foo)"), &reg, &cfg()).unwrap_err();
    assert!(matches!(err, EvalError::Stuck { error: StepError { reason: StuckReason::FreeVariable(_), .. }, .. }));
}

#[test]
fn stuck_forms() {
    let reg = default_registry();
    for (src, reason) in [
        ("(ap 1 2)", StuckReason::NotAFunction),
        ("(fst 3)", StuckReason::NotAPair),
        ("(ifz triv 0 x x)", StuckReason::NotANumeral),
        ("(cff2 + triv 1)", StuckReason::NotANumeral),
    ] {
        match step_seq(&p(src), &reg, &cfg()) {
            Err(e) => assert_eq!(e.reason, reason, "{src}"),
            Ok(x) => panic!("{src} stepped to {x:?}"),
        }
    }
}

#[test]
fn bundled_applications() {
    let reg = default_registry();
    let r = eval_seq(&p(include_str!("../../examples/gcd_app_2_4.cat")), &reg, &cfg()).unwrap();
    assert_eq!((r.value, r.steps), (Expr::num(2), 14));
    let r = eval_par(&p(include_str!("../../examples/fib_app_2.cat")), &reg, &cfg()).unwrap();
    assert_eq!(r.value, Expr::num(1));
    assert_eq!(eval_seq(&p(include_str!("../../examples/zero.cat")), &reg, &cfg()).unwrap().steps, 0);
}

#[test]
fn gcd_zero_case_is_tight() {
    let reg = default_registry();
    let g = programs::gcd(&default_word_size());
    let arg = p("(pair 0 9)");
    let r = eval_seq(&g.apply(arg.clone()), &reg, &cfg()).unwrap();
    let bound = eval_numeral(&g.cost_at(&arg), &reg, &cfg()).unwrap();
    assert_eq!(r.value, Expr::num(9));
    assert_eq!(BigUint::from(r.steps), bound + 1u32);
}

#[test]
fn fib_span_and_work() {
    let reg = default_registry();
    let f = programs::fib();
    for n in 2..12u64 {
        let span = eval_par(&f.apply(Expr::num(n)), &reg, &cfg()).unwrap().steps;
        assert_eq!(span, 9 * n - 6, "span at {n}");
    }
    let work = eval_seq(&f.apply(Expr::num(10)), &reg, &cfg()).unwrap();
    assert_eq!((work.value, work.steps), (Expr::num(55), 1025));
}

// The factor-8 span bound breaks once 9n - 6 exceeds 8n + 9.
#[test]
fn fib_factor_eight_bound_fails_at_sixteen() {
    let reg = default_registry();
    let par = cfg().with_mode(Mode::Par);
    let fib = programs::fib();
    let at = |prog: &programs::Program, n: u64| {
        let arg = Expr::num(n);
        check_bound(&prog.apply(arg.clone()), &Expr::suc(prog.cost_at(&arg)), &reg, &par).unwrap()
    };
    assert!(at(&fib, 15).holds);
    let c = at(&fib, 16);
    assert!(!c.holds);
    assert_eq!((c.steps, c.bound), (138, BigUint::from(137u32)));
    let verified = programs::fib_verified();
    for n in [15, 16, 20] {
        assert!(at(&verified, n).holds);
    }
}

#[test]
fn parallel_pair_counts_the_longer_side() {
    let reg = default_registry();
    let e = p("(pair (fst (pair 1 2)) (cff2 + (cff2 + 1 1) 1))");
    assert_eq!(eval_seq(&e, &reg, &cfg()).unwrap().steps, 3);
    assert_eq!(eval_par(&e, &reg, &cfg()).unwrap().steps, 2);
}

#[test]
fn fuel_exhaustion() {
    let reg = default_registry();
    let omega = p("(ap (fun f a (ap f a)) 0)");
    let err = eval_seq(&omega, &reg, &cfg().with_fuel(50)).unwrap_err();
    assert!(matches!(err, EvalError::Fuel { steps: 50, .. }));
}

#[test]
fn traces_record_every_term() {
    let reg = default_registry();
    let r = eval_seq(&p("(fst (pair (suc (fst (pair 1 2))) 0))"), &reg, &cfg().with_trace(true)).unwrap();
    let t = r.trace.unwrap();
    assert_eq!(t.len() as u64, r.steps);
    assert_eq!(t.last(), Some(&Expr::num(2)));
}

#[test]
fn symbolic_steps_stop_at_variables() {
    let reg = default_registry();
    let e = p("(let (fst (pair x 1)) y (let (fst y) z z))");
    let run = symbolic_run(&e, &reg, &cfg(), Mode::Seq, 10).unwrap();
    assert_eq!(run.last(), Some(&p("(let (fst x) z z)")));
    assert_eq!(run.len(), 2);
    assert_eq!(step_symbolic(&p("(ifz (suc n) 0 m m)"), &reg, &cfg()).unwrap(), Some(p("n")));
}

fn closed_terms() -> impl Strategy<Value = Expr> {
    (any::<u64>(), 2u32..7).prop_map(|(seed, depth)| TermGen::new(seed).closed(depth))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn word_guard_is_exact(m in 0u64..20, n in 0u64..20, w in 1u64..20, f in prop::sample::select(vec!["+", "×", "max", "-"])) {
        let reg = default_registry();
        let c = small_word(w);
        let e = Expr::arith(f, Expr::num(m), Expr::num(n));
        let r = step_seq(&e, &reg, &c);
        if m < w && n < w {
            let v = r.unwrap().unwrap();
            prop_assert!(v.as_numeral().is_some());
        } else {
            let is_guard = matches!(r, Err(StepError { reason: StuckReason::WordGuard { .. }, .. }));
            prop_assert!(is_guard);
        }
    }

    #[test]
    fn steps_are_additive(e in closed_terms(), k in 0u64..8) {
        let reg = default_registry();
        let c = cfg().with_fuel(20_000);
        if let Ok(whole) = eval_seq(&e, &reg, &c) {
            let mut cur = e.clone();
            let mut taken = 0;
            while taken < k {
                match step_seq(&cur, &reg, &c).unwrap() {
                    Some(next) => { cur = next; taken += 1; }
                    None => break,
                }
            }
            let rest = eval_seq(&cur, &reg, &c).unwrap();
            prop_assert_eq!(rest.value, whole.value);
            prop_assert_eq!(rest.steps + taken, whole.steps);
        }
    }

    #[test]
    fn span_never_exceeds_work(e in closed_terms()) {
        let reg = default_registry();
        let c = cfg().with_fuel(20_000);
        if let (Ok(s), Ok(q)) = (eval_seq(&e, &reg, &c), eval_par(&e, &reg, &c)) {
            prop_assert_eq!(&s.value, &q.value);
            prop_assert!(q.steps <= s.steps);
        }
    }

    #[test]
    fn values_do_not_step(e in closed_terms()) {
        let reg = default_registry();
        for mode in [Mode::Seq, Mode::Par] {
            let stepped = step_in(&e, &reg, &cfg(), mode);
            if e.is_value() {
                prop_assert_eq!(stepped, Ok(None));
            } else {
                prop_assert!(!matches!(stepped, Ok(None)));
            }
        }
    }
}
