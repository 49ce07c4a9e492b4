use proptest::prelude::*;

use super::*;
use crate::gen::TermGen;
use crate::programs;
use crate::registry::{default_registry, Entry};
use crate::syntax::{parse, Name};

fn p(s: &str) -> Expr {
    parse(s).unwrap()
}

fn sem() -> Semantics {
    Semantics::new(default_registry(), EvalConfig::default())
}

fn ctx(binders: &[(&str, &str)]) -> Vec<(Name, Expr)> {
    binders.iter().map(|(x, a)| (Name::from(*x), p(a))).collect()
}

#[test]
fn denotes_after_evaluating() {
    let s = sem();
    assert_eq!(s.type_denote(&p("(let zero x nat)")).unwrap(), TypeDen::Nat);
    assert!(matches!(s.type_denote(&p("(rel2 < (cff2 + 1 1) 3)")).unwrap(), TypeDen::Rel { holds: true, .. }));
    assert!(matches!(s.type_denote(&p("3")), Err(DenoteError::NotAType { .. })));
    assert!(matches!(s.type_denote(&p("(rel2 frob 1 2)")), Err(DenoteError::Unregistered(_))));
    assert!(matches!(s.type_denote(&p("(univ 9)")), Err(DenoteError::Level { level: 9, .. })));
    assert!(matches!(s.type_denote(&p("(eq nat triv 0)")), Err(DenoteError::NotAType { .. })));
    match s.type_denote(&p("(eq nat (fst (pair 1 2)) 1)")).unwrap() {
        TypeDen::Eq { lhs, rhs, .. } => assert_eq!((lhs, rhs), (Expr::num(1), Expr::num(1))),
        other => panic!("{other:?}"),
    }
}

#[test]
fn registered_function_costs_one_step() {
    let reg = default_registry().register("double", Entry::unary(|m| m * 2u32)).unwrap();
    let s = Semantics::new(reg, EvalConfig::default());
    let m = p("(cff1 double 3)");
    assert!(s.member_cost(&m, &m, &TypeDen::Nat, &Expr::num(1)).unwrap().is_holds());
    assert!(s.member_cost(&m, &m, &TypeDen::Nat, &Expr::num(0)).unwrap().is_fails());
}

#[test]
fn projection_is_not_free() {
    let s = sem();
    let m = p("(fst (pair 0 0))");
    let v = s.member_cost(&m, &m, &TypeDen::Nat, &Expr::num(0)).unwrap();
    assert!(v.is_fails());
    assert!(s.member_cost(&m, &m, &TypeDen::Nat, &Expr::num(1)).unwrap().is_holds());
}

#[test]
fn cost_bound_must_be_a_numeral() {
    let s = sem();
    let m = Expr::num(0);
    let err = s.member_cost(&m, &m, &TypeDen::Nat, &Expr::Triv).unwrap_err();
    assert!(matches!(err, SemError::Presupposition { .. }));
    let err = s.member_cost(&m, &m, &TypeDen::Nat, &p("(fst 1)")).unwrap_err();
    assert!(matches!(err, SemError::Presupposition { .. }));
}

#[test]
fn open_projection_fails_at_zero() {
    let s = sem();
    let j = Judgment::new(ctx(&[("a", "nat")]), Form::Member { lhs: p("(fst a)"), rhs: p("(fst a)"), ty: Expr::Nat });
    let v = s.check_open(&j).unwrap();
    let w = v.witness().expect("fails");
    assert_eq!(w.instance, vec![("a".to_string(), "0".to_string())]);
}

#[test]
fn empty_refinement_is_an_error() {
    let s = sem();
    let j = Judgment::new(ctx(&[("x", "(subset x nat (rel2 < x 0))")]), Form::Member {
        lhs: p("x"),
        rhs: p("x"),
        ty: Expr::Nat,
    });
    assert_eq!(s.check_open(&j).unwrap_err(), SemError::Sample(SampleError::Empty { binder: "x".into() }));
}

#[test]
fn function_binders_cannot_be_sampled() {
    let s = sem();
    let f = ("f", "(funtime a nat nat 0)");
    let used = Judgment::new(ctx(&[f]), Form::Member { lhs: p("f"), rhs: p("f"), ty: p("(funtime a nat nat 0)") });
    match s.check_open(&used).unwrap_err() {
        SemError::Sample(SampleError::Unsamplable { binder, .. }) => assert_eq!(binder, "f"),
        other => panic!("{other:?}"),
    }
    // unused function hypotheses are dropped
    let unused = Judgment::new(ctx(&[f, ("x", "nat")]), Form::Member { lhs: p("x"), rhs: p("x"), ty: Expr::Nat });
    assert!(s.check_open(&unused).unwrap().is_holds());
}

#[test]
fn dependent_contexts_meet_their_constraints() {
    let s = sem();
    let c = ctx(&[("n", "nat"), ("m", "nat"), ("q", "(eq nat (suc m) n)")]);
    let insts = s.sample_instances(&c).unwrap();
    assert!(insts.len() >= 10, "only {} instances", insts.len());
    for g in &insts {
        let n = g.get("n").unwrap().as_u64().unwrap();
        let m = g.get("m").unwrap().as_u64().unwrap();
        assert_eq!(n, m + 1);
    }
}

#[test]
fn gcd_meets_its_specification() {
    let s = sem();
    let g = programs::gcd(&s.config.word_size);
    let form = Form::Value { lhs: g.fun.clone(), rhs: g.fun.clone(), ty: g.spec() };
    let v = s.check_closed(&form);
    assert!(v.is_holds(), "{v:?}");
    assert!(v.tested > 0);

    let tight = programs::Program { cost: Expr::cff2("-", g.cost.clone(), Expr::num(1)), ..g };
    let form = Form::Value { lhs: tight.fun.clone(), rhs: tight.fun.clone(), ty: tight.spec() };
    let v = s.check_closed(&form);
    let w = v.witness().expect("P - 1 is too tight");
    assert_eq!(w.instance[0].1, "(pair 0 0)");
}

#[test]
fn fib_meets_its_span_bound_on_small_inputs() {
    let s = sem().with_mode(Mode::Par);
    for prog in [programs::fib(), programs::fib_verified()] {
        let form = Form::Value { lhs: prog.fun.clone(), rhs: prog.fun.clone(), ty: prog.spec() };
        assert!(s.check_closed(&form).is_holds(), "{}", prog.id);
    }
}

#[test]
fn universe_members_are_types() {
    let s = sem();
    let u = TypeDen::Univ(0);
    assert!(s.member_eq(&Expr::Nat, &Expr::Nat, &u).is_holds());
    assert!(s.member_eq(&p("(rel2 < 0 1)"), &p("(rel2 < 0 1)"), &u).is_holds());
    assert!(s.member_eq(&Expr::Nat, &p("(rel2 < 0 1)"), &u).is_fails());
    assert!(s.member_eq(&Expr::Univ(0), &Expr::Univ(0), &u).is_unknown());
    assert!(s.member_eq(&Expr::Univ(0), &Expr::Univ(0), &TypeDen::Univ(1)).is_holds());
    assert!(s.member_eq(&Expr::num(3), &Expr::num(3), &u).is_fails());
}

#[test]
fn subset_and_sigma_membership() {
    let s = sem();
    let even = s.type_denote(&p("(subset x nat (eq nat (cff2 % x 2) 0))")).unwrap();
    assert!(s.member_eq(&Expr::num(4), &Expr::num(4), &even).is_holds());
    assert!(s.member_eq(&Expr::num(3), &Expr::num(3), &even).is_fails());
    let dep = s.type_denote(&p("(sigma a nat (rel2 < a 3))")).unwrap();
    assert!(s.member_eq(&p("(pair 2 triv)"), &p("(pair 2 triv)"), &dep).is_holds());
    assert!(s.member_eq(&p("(pair 3 triv)"), &p("(pair 3 triv)"), &dep).is_fails());
    assert!(s.inhabited(&dep).is_holds());
}

#[test]
fn type_equality() {
    let s = sem();
    assert!(s.type_eq(&p("(let 1 x (rel2 < x 2))"), &p("(rel2 < 1 2)")).is_holds());
    assert!(s.type_eq(&p("(rel2 < 1 2)"), &p("(rel2 < 1 3)")).is_fails());
    assert!(s.type_eq(&p("(subset x nat (rel2 ≤ x 5))"), &p("(subset y nat (rel2 ≤ y (cff2 + 2 3)))")).is_holds());
    assert!(s.type_eq(&p("(subset x nat (rel2 ≤ x 5))"), &p("(subset y nat (rel2 ≤ y 6))")).is_fails());
    assert!(s.type_eq(&Expr::Nat, &p("(eq nat 0 0)")).is_fails());
}

#[test]
fn measure_reads_the_bound() {
    let s = sem();
    let g = programs::gcd(&s.config.word_size);
    assert_eq!(s.measure(&g.cost, "a", &p("(pair 0 7)")).unwrap(), 5u32.into());
    assert_eq!(s.measure(&g.cost, "a", &p("(pair 3 7)")).unwrap(), 32u32.into());
}

fn closed_terms() -> impl Strategy<Value = Expr> {
    (any::<u64>(), 2u32..6).prop_map(|(seed, depth)| TermGen::new(seed).closed(depth))
}

fn small_types() -> impl Strategy<Value = Expr> {
    prop::sample::select(vec![
        "nat",
        "(eq nat 2 2)",
        "(eq nat 2 3)",
        "(rel2 < 1 4)",
        "(sigma a nat (rel2 ≤ a 5))",
        "(subset x nat (rel2 < x 7))",
        "(sigma a nat (eq nat a a))",
        "(let (cff2 + 1 2) k (subset x nat (rel2 < x k)))",
    ])
    .prop_map(p)
}

fn small_values() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (0u64..9).prop_map(Expr::num),
        Just(Expr::Triv),
        (0u64..9).prop_map(|k| Expr::pair(Expr::num(k), Expr::Triv)),
        (0u64..9, 0u64..9).prop_map(|(a, b)| Expr::pair(Expr::num(a), Expr::num(b))),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn membership_is_a_per(a in small_types(), u in small_values(), v in small_values(), w in small_values()) {
        let s = sem();
        let d = s.type_denote(&a).unwrap();
        let uv = s.value_rel(&u, &v, &d);
        let vu = s.value_rel(&v, &u, &d);
        prop_assert_eq!(uv.is_holds(), vu.is_holds());
        if uv.is_holds() && s.value_rel(&v, &w, &d).is_holds() {
            prop_assert!(s.value_rel(&u, &w, &d).is_holds());
        }
    }

    #[test]
    fn conversion_at_zero_cost(a in small_types(), v in small_values()) {
        let s = sem();
        let d = s.type_denote(&a).unwrap();
        let at_zero = s.member_cost(&v, &v, &d, &Expr::num(0)).unwrap();
        prop_assert_eq!(at_zero.is_holds(), s.member_eq(&v, &v, &d).is_holds());
    }

    #[test]
    fn head_expansion_adds_one(e in closed_terms()) {
        let s = sem();
        let reg = &s.registry;
        if let Ok(Some(next)) = crate::eval::step_seq(&e, reg, &s.config) {
            if let Ok(r) = crate::eval::eval_seq(&next, reg, &s.config) {
                if r.value.as_numeral().is_some() {
                    let c = Expr::num(r.steps);
                    prop_assert!(s.member_cost(&next, &next, &TypeDen::Nat, &c).unwrap().is_holds());
                    let c1 = Expr::suc(c);
                    prop_assert!(s.member_cost(&e, &next, &TypeDen::Nat, &c1).unwrap().is_holds());
                    prop_assert!(s.member_cost(&e, &e, &TypeDen::Nat, &c1).unwrap().is_holds());
                }
            }
        }
    }

    #[test]
    fn denotation_is_deterministic(a in small_types()) {
        let s = sem();
        prop_assert_eq!(s.type_denote(&a), s.type_denote(&a));
    }
}
