//! Derivations of the bundled programs' funtime types.

use num_bigint::BigUint;

use crate::judgment::Form;
use crate::programs::{self, Program};
use crate::registry::{default_registry, EvalConfig, Mode};
use crate::syntax::{fresh_name, par, subst1, Expr, Telescope};

use super::build::extend;
use super::{Builder, Derivation, Document, Payload, RuleTag};

type D = Derivation;

fn builder(mode: Mode, w: &BigUint) -> Builder {
    Builder::new(default_registry(), EvalConfig::default().with_mode(mode).with_word_size(w.clone()))
}

/// `fun f a. body ∈₀ funtime(a, A, B, P)` by FuntimeI. `body` gets the
/// context `a : A, f : R` with `R` the decreasing hypothesis.
fn funtime_intro(b: &Builder, prog: &Program, body: impl FnOnce(&Builder, &Telescope) -> D) -> D {
    let (f, a) = prog.binders();
    let a0 = fresh_name(&format!("{a}0"), |s| s == &*a || prog.dom.has_free(s) || prog.cost.has_free(s));
    let smaller = Expr::subset(&a0, prog.dom.clone(), Expr::rel2("<", subst1(&prog.cost, &a, &Expr::Var(a0.clone())), prog.cost.clone()));
    let hyp = Expr::funtime(&a, smaller, prog.cod.clone(), prog.cost.clone());
    let empty: Telescope = Vec::new();
    let ca = extend(&empty, &a, prog.dom.clone());
    let c4 = extend(&ca, &f, hyp);
    let ps = vec![b.type_member(&empty, &prog.dom), b.type_member(&ca, &prog.cod), b.nat_member(&ca, &prog.cost), body(b, &c4)];
    let spec = prog.spec();
    b.node(RuleTag::FuntimeI, &empty, Form::Value { lhs: prog.fun.clone(), rhs: prog.fun.clone(), ty: spec }, ps)
        .with_payload(Payload { var: Some(a0.to_string()), ..Payload::default() })
}

/// The domain of the recursive hypothesis `f` in context `c`.
fn hyp_dom(c: &Telescope, f: &str) -> Expr {
    match c.iter().find(|(x, _)| &**x == f) {
        Some((_, Expr::Funtime { dom, .. })) => (**dom).clone(),
        _ => panic!("`{f}` is not a recursive hypothesis"),
    }
}

/// `ap f v` for a natural `v` whose measure is smaller.
fn recurse_nat(b: &Builder, c: &Telescope, v: &Expr) -> D {
    let arg = b.subset_intro(b.to_cost0(b.nat_value(c, v)), &hyp_dom(c, "f"));
    b.apply(c, "f", arg)
}

/// Splits `ifz(V, suc 0, b, suc P1)` into `P1`.
fn succ_cost(p: &Expr) -> Expr {
    match p {
        Expr::Ifz { succ, .. } => match &**succ {
            Expr::Suc(p1) => (**p1).clone(),
            other => panic!("successor cost {other} is not a successor"),
        },
        other => panic!("cost {other} is not a case split"),
    }
}

/// NatE2 over a variable with a constant motive `ty`, zero-cost zero
/// branch `z0` and successor branch built in the extended context.
fn nat_cases(
    b: &Builder,
    c: &Telescope,
    v: &str,
    ty: &Expr,
    succ_var: &str,
    p1: &Expr,
    zero: impl FnOnce(&Telescope) -> D,
    succ: impl FnOnce(&Telescope) -> D,
) -> D {
    let m = b.fresh(c, "m");
    let motive = b.type_member(&extend(c, &m, Expr::Nat), ty);
    let scrut = Expr::var(v);
    let bc = extend(c, succ_var, Expr::Nat);
    let p = b.fresh(c, "p");
    let zc = extend(c, &p, Expr::eq(Expr::Nat, Expr::zero(), scrut.clone()));
    let q = b.fresh(&bc, "q");
    let sc = extend(&bc, &q, Expr::eq(Expr::Nat, Expr::suc(Expr::var(succ_var)), scrut.clone()));
    let zd = zero(&zc);
    let sd = succ(&sc);
    let (zl, _, _) = subject(&zd);
    let (sl, _, _) = subject(&sd);
    let f = Form::Cost {
        lhs: Expr::ifz(scrut.clone(), zl.clone(), succ_var, sl.clone()),
        rhs: Expr::ifz(scrut.clone(), zl.clone(), succ_var, sl.clone()),
        ty: ty.clone(),
        cost: Expr::ifz(scrut.clone(), Expr::num(1), succ_var, Expr::suc(p1.clone())),
    };
    let ps = vec![
        motive,
        b.nat_value(c, &scrut),
        b.num(c, &BigUint::ZERO),
        b.nat_member(&bc, p1),
        zd,
        sd,
    ];
    b.node(RuleTag::NatE2, c, f, ps)
}

fn subject(d: &D) -> (&Expr, &Expr, &Expr) {
    match &d.conclusion.form {
        Form::Member { lhs, rhs, ty } | Form::Value { lhs, rhs, ty } | Form::Cost { lhs, rhs, ty, .. } => (lhs, rhs, ty),
        Form::TypeEq { .. } => panic!("not a membership"),
    }
}

pub fn gcd_document(w: &BigUint) -> Document {
    let b = builder(Mode::Seq, w);
    let prog = programs::gcd(w);
    let root = funtime_intro(&b, &prog, |b, c4| gcd_body(b, &prog, c4));
    Document::new(Mode::Seq, w.clone(), root)
}

fn gcd_body(b: &Builder, prog: &Program, c4: &Telescope) -> D {
    let (x, y) = (Expr::var("x"), Expr::var("y"));
    let (fst_a, snd_a) = (Expr::fst(Expr::var("a")), Expr::snd(Expr::var("a")));
    let nat = Expr::Nat;
    let ax = Expr::subset("x", nat.clone(), Expr::eq(nat.clone(), x.clone(), fst_a.clone()));
    let ay = Expr::subset("y", nat.clone(), Expr::eq(nat.clone(), y.clone(), snd_a.clone()));
    let Expr::Sigma { fst: sx, snd: sy, .. } = &prog.dom else { panic!("gcd takes a pair") };
    let target = Expr::subset("d", nat.clone(), Expr::rel3("gcdProp", Expr::var("d"), x.clone(), y.clone()));

    let first = b.subset_intro(b.peel(b.proj(c4, &fst_a)), &ax);
    let c5 = extend(c4, "x", ax.clone());
    let second = b.subset_intro(b.peel(b.proj(&c5, &snd_a)), &ay);
    let c6 = extend(&c5, "y", ay);

    let sx1 = Expr::suc(Expr::var("x'"));
    let q3 = Expr::suc(Expr::times(Expr::num(8), sx1.clone()));
    let p1 = Expr::plus(Expr::num(1), Expr::suc(q3.clone()));

    let zero = |zc: &Telescope| b.subset_intro(b.peel(b.hyp(zc, "y")), &target);
    let succ = |c7: &Telescope| {
        let mz = Expr::arith("%", y.clone(), sx1.clone());
        let az = Expr::subset("z", nat.clone(), Expr::eq(nat.clone(), Expr::var("z"), mz.clone()));
        let s1 = b.subset_intro(b.arith(c7, &mz), &az);
        let c8 = extend(c7, "z", az);

        // the argument (z, suc x') as a word pair with a smaller measure
        let v = Expr::pair(Expr::var("z"), sx1.clone());
        let pv = b.fresh(&c8, "p");
        let comp1 = b.to_value(b.subset_intro(b.peel(b.hyp(&c8, "z")), sx));
        let comp2 = b.to_value(b.subset_intro(b.to_cost0(b.nat_value(&c8, &sx1)), sy));
        let pair = b.node(
            RuleTag::SigmaI,
            &c8,
            Form::Value { lhs: v.clone(), rhs: v.clone(), ty: prog.dom.clone() },
            vec![b.type_member(&c8, sx), b.type_member(&extend(&c8, &pv, (**sx).clone()), sy), comp1, comp2],
        );
        let arg = b.subset_intro(b.to_cost0(pair), &hyp_dom(&c8, "f"));
        let call = b.apply(&c8, "f", arg);

        // its result type, by evaluating the codomain at the argument
        let cod_v = subst1(&prog.cod, "a", &v);
        let bz = Expr::subset("d", nat.clone(), Expr::rel3("gcdProp", Expr::var("d"), Expr::var("z"), sx1.clone()));
        let call = b.resp(b.expand_to(&c8, &cod_v, &bz), call);

        // gcd(y mod x, x) = gcd(x, y)
        let prop = Expr::rel3("gcdProp", Expr::var("d"), x.clone(), y.clone());
        let transfer = b.seq2(b.to_member(call.clone()), b.inst(&extend(&c8, "d", bz.clone()), &prop));
        let (lhs, rhs, _) = subject(&call);
        let f = Form::Cost {
            lhs: lhs.clone(),
            rhs: rhs.clone(),
            ty: target.clone(),
            cost: match &call.conclusion.form {
                Form::Cost { cost, .. } => cost.clone(),
                _ => unreachable!(),
            },
        };
        let ps = vec![
            b.type_member(&c8, &nat),
            b.type_member(&extend(&c8, "d", nat.clone()), &prop),
            b.peel(call),
            transfer,
        ];
        let s2 = b.weaken(b.node(RuleTag::SubsetI, &c8, f, ps), q3.clone());

        let seq = b.seq3(s1.clone(), s2);
        let typed = b.drop_let_type(b.to_member(s1.clone()), seq);
        let one = b.num(c7, &BigUint::from(1u32));
        let dropped = b.vacuous(b.to_member(s1), b.nat_member(c7, &q3));
        let suc_d = suc_member(b, c7, dropped);
        let sum = {
            let (l, r, _) = subject(&suc_d);
            let f = Form::Member {
                lhs: Expr::plus(Expr::num(1), l.clone()),
                rhs: Expr::plus(Expr::num(1), r.clone()),
                ty: Expr::Nat,
            };
            b.node(RuleTag::FFE1, c7, f, vec![one, suc_d])
        };
        b.replace(typed, sum)
    };
    let cases = nat_cases(b, &c6, "x", &target, "x'", &p1, zero, succ);
    b.seq3(first, b.seq3(second, cases))
}

fn suc_member(b: &Builder, c: &Telescope, d: D) -> D {
    let (l, r, _) = subject(&d);
    let f = Form::Member { lhs: Expr::suc(l.clone()), rhs: Expr::suc(r.clone()), ty: Expr::Nat };
    b.node(RuleTag::NatISuc, c, f, vec![d])
}

/// fib at its verified span bound, in parallel mode.
pub fn fib_document(w: &BigUint) -> Document {
    let b = builder(Mode::Par, w);
    let prog = programs::fib_verified();
    let p1 = succ_cost(&prog.cost);
    let p2 = succ_cost(&p1);
    let nat = Expr::Nat;
    let root = funtime_intro(&b, &prog, |b, c4| {
        let zero = |zc: &Telescope| b.to_cost0(b.num(zc, &BigUint::ZERO));
        let succ = |c5: &Telescope| {
            let zero = |zc: &Telescope| b.to_cost0(b.num(zc, &BigUint::from(1u32)));
            let succ = |c6: &Telescope| fib_par(b, c6);
            nat_cases(b, c5, "n'", &nat, "n''", &p2, zero, succ)
        };
        nat_cases(b, c4, "n", &nat, "n'", &p1, zero, succ)
    });
    Document::new(Mode::Par, w.clone(), root)
}

fn fib_par(b: &Builder, c6: &Telescope) -> D {
    let factor = |v: &str| Expr::times(Expr::num(9), Expr::suc(Expr::var(v)));
    let call1 = b.weaken(recurse_nat(b, c6, &Expr::var("n'")), factor("n'"));
    let call2 = b.weaken(recurse_nat(b, c6, &Expr::var("n''")), factor("n''"));
    let inner = extend(&extend(c6, "x", Expr::Nat), "y", Expr::Nat);
    let sum = Expr::plus(Expr::var("x"), Expr::var("y"));
    let add = b.node(
        RuleTag::FFE2,
        &inner,
        Form::Cost { lhs: sum.clone(), rhs: sum.clone(), ty: Expr::Nat, cost: Expr::num(1) },
        vec![b.nat_value(&inner, &Expr::var("x")), b.nat_value(&inner, &Expr::var("y"))],
    );
    let (m1, m2) = (subject(&call1).0.clone(), subject(&call2).0.clone());
    let cost = |d: &D| match &d.conclusion.form {
        Form::Cost { cost, .. } => cost.clone(),
        _ => unreachable!(),
    };
    let nest = |e: Expr| Expr::let_(m1.clone(), "x", Expr::let_(m2.clone(), "y", e));
    let head = Expr::plus(Expr::max(cost(&call1), cost(&call2)), Expr::num(5));
    let term = par(m1.clone(), m2.clone(), "x", "y", sum);
    let f = Form::Cost {
        lhs: term.clone(),
        rhs: term,
        ty: nest(Expr::Nat),
        cost: Expr::plus(head.clone(), nest(Expr::num(1))),
    };
    let mem1 = b.to_member(call1.clone());
    let mem2 = b.to_member(call2.clone());
    let joined = b.node(RuleTag::BinSeq, c6, f, vec![call1, call2, add]);
    let ty_eq = b.vacuous(mem1.clone(), b.vacuous(mem2.clone(), b.type_refl(c6, &Expr::Nat)));
    let typed = b.resp(ty_eq, joined);
    let tail = b.vacuous(mem1, b.vacuous(mem2, b.num(c6, &BigUint::from(1u32))));
    let (tl, tr, _) = subject(&tail);
    let eq = b.node(
        RuleTag::FFE1,
        c6,
        Form::Member { lhs: Expr::plus(head.clone(), tl.clone()), rhs: Expr::plus(head.clone(), tr.clone()), ty: Expr::Nat },
        vec![b.nat_member(c6, &head), tail],
    );
    b.replace(typed, eq)
}

pub fn countdown_document(w: &BigUint) -> Document {
    let b = builder(Mode::Seq, w);
    let prog = programs::countdown();
    let a1 = Expr::var("a'");
    let p1 = Expr::suc(prog.cost_at(&a1));
    let root = funtime_intro(&b, &prog, |b, c4| {
        let zero = |zc: &Telescope| b.to_cost0(b.num(zc, &BigUint::ZERO));
        let succ = |c5: &Telescope| recurse_nat(b, c5, &a1);
        let cases = nat_cases(b, c4, "a", &Expr::Nat, "a'", &p1, zero, succ);
        b.weaken(cases, prog.cost.clone())
    });
    Document::new(Mode::Seq, w.clone(), root)
}

/// The bundled derivations under their program ids.
pub fn bundled(w: &BigUint) -> Vec<(&'static str, Document)> {
    vec![("gcd", gcd_document(w)), ("fib-verified", fib_document(w)), ("countdown", countdown_document(w))]
}
