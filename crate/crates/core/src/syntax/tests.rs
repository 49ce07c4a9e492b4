use proptest::prelude::*;

use super::*;

fn p(s: &str) -> Expr {
    parse(s).unwrap()
}

#[test]
fn numerals_desugar() {
    assert_eq!(p("(suc zero)"), Expr::num(1));
    assert_eq!(p("(suc (suc 3))"), Expr::num(5));
    assert_eq!(p("zero"), Expr::num(0));
    assert_eq!(p("123456789012345678901234567890").to_string(), "123456789012345678901234567890");
    assert_eq!(print(&Expr::num(3)), "3");
}

#[test]
fn suc_of_variable_stays_symbolic() {
    let e = p("(suc x)");
    assert_eq!(e, Expr::Suc(std::sync::Arc::new(Expr::var("x"))));
    assert!(e.is_value());
    assert_eq!(subst1(&e, "x", &Expr::num(4)), Expr::num(5));
}

#[test]
fn par_desugars_to_lets() {
    let e = p("(par x y a b (arith + a b))");
    let expect = Expr::let_(
        Expr::pair(Expr::var("x"), Expr::var("y")),
        "c",
        Expr::let_(
            Expr::fst(Expr::var("c")),
            "a",
            Expr::let_(Expr::snd(Expr::var("c")), "b", Expr::arith("+", Expr::var("a"), Expr::var("b"))),
        ),
    );
    assert_eq!(e, expect);
}

#[test]
fn par_picks_a_fresh_pair_name() {
    let e = p("(par 1 2 a b (pair c a))");
    match &e {
        Expr::Let { var, .. } => assert_ne!(&**var, "c"),
        _ => panic!("expected a let"),
    }
    assert!(e.free_vars().contains("c"));
}

#[test]
fn constructor_mapping() {
    assert_eq!(p("(fst (pair zero triv))"), Expr::fst(Expr::pair(Expr::zero(), Expr::Triv)));
    assert_eq!(print(&Expr::fun("f", "a", Expr::ap(Expr::var("f"), Expr::var("a")))), "(fun f a (ap f a))");
}

#[test]
fn ascii_registry_aliases() {
    assert_eq!(p("(cff2 * 2 3)"), Expr::times(Expr::num(2), Expr::num(3)));
    assert_eq!(p("(rel2 <= 2 3)"), Expr::rel2("≤", Expr::num(2), Expr::num(3)));
    assert_eq!(p("(arith / 6 3)"), Expr::arith("÷", Expr::num(6), Expr::num(3)));
}

#[test]
fn parse_errors_carry_positions() {
    let e = parse("(fun f a)").unwrap_err();
    assert_eq!((e.line, e.col), (1, 1));
    assert!(matches!(e.kind, ParseErrorKind::Arity { expected: 3, found: 2, .. }));

    let e = parse("(pair 1\n  (frob 2))").unwrap_err();
    assert_eq!((e.line, e.col), (2, 4));
    assert_eq!(e.kind, ParseErrorKind::UnknownKeyword("frob".into()));

    assert_eq!(parse("(fst 1").unwrap_err().kind, ParseErrorKind::UnexpectedEof);
    assert_eq!(parse("1 2").unwrap_err().kind, ParseErrorKind::Trailing);
    assert_eq!(parse("(fun 3 a a)").unwrap_err().kind, ParseErrorKind::BadBinder("3".into()));
    assert_eq!(parse("(univ x)").unwrap_err().kind, ParseErrorKind::BadLevel("x".into()));
    assert_eq!(parse("fst").unwrap_err().kind, ParseErrorKind::BareKeyword("fst".into()));
    assert_eq!(parse("()").unwrap_err().kind, ParseErrorKind::EmptyList);
}

#[test]
fn comments_are_skipped() {
    assert_eq!(p("; a comment\n(suc ; inline\n 1)"), Expr::num(2));
}

#[test]
fn values() {
    assert!(p("(pair 1 triv)").is_value());
    assert!(!p("(ap (fun f a a) zero)").is_value());
    assert!(!p("(suc (fst (pair zero zero)))").is_value());
    assert!(p("(eq nat (fst x) 1)").is_value());
    assert!(p("x").is_value());
}

#[test]
fn free_variables() {
    assert_eq!(p("a").free_vars().len(), 1);
    let fv = p("(fun f a (ap f b))").free_vars();
    assert_eq!(fv.into_iter().map(|n| n.to_string()).collect::<Vec<_>>(), vec!["b"]);
    assert!(crate::programs::gcd(&crate::registry::default_word_size()).fun.is_closed());
    assert!(crate::programs::fib().fun.is_closed());
}

#[test]
fn substitution() {
    assert_eq!(subst1(&p("a"), "a", &Expr::num(2)), Expr::num(2));
    let shadow = p("(fun f a a)");
    assert_eq!(subst1(&shadow, "a", &Expr::num(2)), shadow);
    let f = p("(fun f a a)");
    let mut b = Binding::new();
    b.insert("f", f.clone()).unwrap();
    b.insert("a", Expr::num(1)).unwrap();
    assert_eq!(subst(&p("(ap f a)"), &b), Expr::ap(f, Expr::num(1)));
}

#[test]
fn substitution_avoids_capture() {
    // [y/x](fun f y x) must not capture the image.
    let e = subst1(&p("(fun f y x)"), "x", &Expr::var("y"));
    match &e {
        Expr::Fun { var, body, .. } => {
            assert_ne!(&**var, "y");
            assert_eq!(**body, Expr::var("y"));
        }
        _ => panic!(),
    }
    assert!(e.alpha_eq(&p("(fun f z y)")));
    // simultaneous, not sequential
    let mut b = Binding::new();
    b.insert("x", Expr::var("y")).unwrap();
    b.insert("y", Expr::var("x")).unwrap();
    assert_eq!(subst(&p("(pair x y)"), &b), p("(pair y x)"));
}

#[test]
fn binding_rejects_non_values() {
    let mut b = Binding::new();
    assert!(b.insert("a", p("(fst (pair 1 2))")).is_err());
}

#[test]
fn alpha_equality() {
    assert!(p("(fun f a (ap f a))").alpha_eq(&p("(fun g b (ap g b))")));
    assert!(!p("(fun f a (ap f a))").alpha_eq(&p("(fun g b (ap b g))")));
    assert!(p("(let 1 x (pair x y))").alpha_eq(&p("(let 1 z (pair z y))")));
    assert!(!p("(let 1 x (pair x y))").alpha_eq(&p("(let 1 y (pair y y))")));
    assert!(!p("(rel2 < 1 2)").alpha_eq(&p("(rel2 ≤ 1 2)")));
    assert!(p("(fun x x x)").alpha_eq(&p("(fun f y y)")));
    assert!(!p("(fun x x x)").alpha_eq(&p("(fun y f y)")));
}

#[test]
fn fresh_names_avoid_taken() {
    assert_eq!(&*fresh_name("x", |s| s == "x" || s == "x1"), "x2");
    assert_eq!(&*fresh_name("c", |_| false), "c");
}

fn ident() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["x", "y", "z", "a", "f", "x'", "n''"]).prop_map(String::from)
}

fn reg() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["+", "×", "max", "<", "gcdProp", "double"]).prop_map(String::from)
}

pub(crate) fn arb_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        ident().prop_map(|x| Expr::var(&x)),
        (0u64..40).prop_map(Expr::num),
        Just(Expr::Nat),
        Just(Expr::Triv),
        (0u32..3).prop_map(Expr::Univ),
    ];
    leaf.prop_recursive(5, 64, 4, |inner| {
        let e = || inner.clone();
        prop_oneof![
            (e(), e()).prop_map(|(l, r)| Expr::ap(l, r)),
            (e(), e()).prop_map(|(l, r)| Expr::pair(l, r)),
            e().prop_map(Expr::suc),
            e().prop_map(Expr::fst),
            e().prop_map(Expr::snd),
            (ident(), ident(), e()).prop_map(|(f, a, b)| Expr::fun(&f, &a, b)),
            (e(), e(), ident(), e()).prop_map(|(s, z, x, b)| Expr::ifz(s, z, &x, b)),
            (e(), ident(), e()).prop_map(|(m, x, b)| Expr::let_(m, &x, b)),
            (ident(), e(), e(), e()).prop_map(|(x, a, b, c)| Expr::funtime(&x, a, b, c)),
            (ident(), e(), e()).prop_map(|(x, a, b)| Expr::pi(&x, a, b)),
            (ident(), e(), e()).prop_map(|(x, a, b)| Expr::sigma(&x, a, b)),
            (ident(), e(), e()).prop_map(|(x, a, b)| Expr::subset(&x, a, b)),
            (e(), e(), e()).prop_map(|(a, m, n)| Expr::eq(a, m, n)),
            (reg(), e(), e()).prop_map(|(r, m, n)| Expr::rel2(&r, m, n)),
            (reg(), e(), e(), e()).prop_map(|(r, m, n, o)| Expr::rel3(&r, m, n, o)),
            (reg(), e()).prop_map(|(f, m)| Expr::cff1(&f, m)),
            (reg(), e(), e()).prop_map(|(f, m, n)| Expr::cff2(&f, m, n)),
            (reg(), e()).prop_map(|(f, m)| Expr::op(&f, m)),
            (reg(), e(), e()).prop_map(|(f, m, n)| Expr::arith(&f, m, n)),
        ]
    })
}

fn arb_value() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (0u64..20).prop_map(Expr::num),
        Just(Expr::Triv),
        ident().prop_map(|x| Expr::var(&x)),
        ident().prop_map(|x| Expr::fun("g", &x, Expr::var(&x))),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn print_parse_round_trip(e in arb_expr()) {
        let back = parse(&print(&e)).unwrap();
        prop_assert!(back.alpha_eq(&e), "{} vs {}", print(&back), print(&e));
        prop_assert_eq!(back, e);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn alpha_eq_is_reflexive_and_symmetric(e in arb_expr(), f in arb_expr()) {
        prop_assert!(e.alpha_eq(&e));
        prop_assert_eq!(e.alpha_eq(&f), f.alpha_eq(&e));
    }

    #[test]
    fn substitution_respects_alpha(e in arb_expr(), v in arb_value(), x in ident()) {
        let renamed = rename_bound(&e, "r");
        prop_assert!(renamed.alpha_eq(&e));
        let lhs = subst1(&e, &x, &v);
        let rhs = subst1(&renamed, &x, &v);
        prop_assert!(lhs.alpha_eq(&rhs));
    }

    #[test]
    fn substitutions_compose(e in arb_expr(), v1 in (0u64..9).prop_map(Expr::num), v2 in arb_value()) {
        let b1 = Binding::single("x", v1).unwrap();
        let b2 = Binding::single("y", v2).unwrap();
        let seq = subst(&subst(&e, &b1), &b2);
        let sim = subst(&e, &b1.union(&b2));
        prop_assert!(seq.alpha_eq(&sim));
    }

    #[test]
    fn substitution_removes_the_variable(e in arb_expr(), k in 0u64..9) {
        let out = subst1(&e, "x", &Expr::num(k));
        prop_assert!(!out.has_free("x"));
    }

    #[test]
    fn numerals_are_canonical(k in 0u64..10_000) {
        let v = Expr::num(k);
        prop_assert_eq!(v.as_u64(), Some(k));
        prop_assert_eq!(Expr::suc(v.clone()), Expr::num(k + 1));
        prop_assert_eq!(parse(&print(&v)).unwrap(), v);
    }
}
