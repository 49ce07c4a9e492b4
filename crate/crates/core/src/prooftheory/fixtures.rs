//! Unit fixtures for every rule tag and corrupted copies of the bundled
//! derivations, each with the verdict the checker must reach.
//!
//! Accepted fixtures are small hand-built trees where that is practical
//! and subtrees of the bundled derivations for the recursive rules.
//! Rejected fixtures each break one premise, side condition or shape
//! constraint and name the node that must report it.

use num_bigint::BigUint;

use crate::judgment::{Form, Judgment};
use crate::registry::{default_registry, default_word_size, EvalConfig, Mode};
use crate::syntax::{name, par, parse, Expr, Telescope};

use super::build::extend;
use super::{scripts, Builder, Derivation, Document, ErrorKind, Payload, Rule, RuleTag, Side, ROOT};

type D = Derivation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expect {
    Accept,
    Reject { path: String, kind: ErrorKind },
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub rule: RuleTag,
    pub doc: Document,
    pub expect: Expect,
}

/// A bundled derivation with one corruption.
#[derive(Clone, Debug)]
pub struct Mutation {
    pub name: &'static str,
    pub base: &'static str,
    pub doc: Document,
    /// The node that must be reported first.
    pub path: String,
    pub kind: ErrorKind,
}

fn e(s: &str) -> Expr {
    parse(s).unwrap_or_else(|err| panic!("fixture expression `{s}`: {err}"))
}

fn tel(bs: &[(&str, &str)]) -> Telescope {
    bs.iter().map(|(x, a)| (name(x), e(a))).collect()
}

fn mem(l: &str, r: &str, t: &str) -> Form {
    Form::Member { lhs: e(l), rhs: e(r), ty: e(t) }
}

fn val(l: &str, r: &str, t: &str) -> Form {
    Form::Value { lhs: e(l), rhs: e(r), ty: e(t) }
}

fn cost(l: &str, r: &str, t: &str, p: &str) -> Form {
    Form::Cost { lhs: e(l), rhs: e(r), ty: e(t), cost: e(p) }
}

fn teq(l: &str, r: &str) -> Form {
    Form::TypeEq { lhs: e(l), rhs: e(r) }
}

fn node(tag: RuleTag, c: &Telescope, f: Form, premises: Vec<D>) -> D {
    Derivation::new(tag, Judgment::new(c.clone(), f), premises)
}

fn steps(k: u64) -> Payload {
    Payload { steps: Some(k), ..Payload::default() }
}

fn level(i: u32) -> Payload {
    Payload { level: Some(i), ..Payload::default() }
}

/// The first node with `tag` in pre-order, with its path.
pub fn find(d: &D, tag: RuleTag) -> Option<(String, D)> {
    find_where(d, tag, |_| true)
}

pub fn find_where(d: &D, tag: RuleTag, pred: impl Fn(&D) -> bool) -> Option<(String, D)> {
    let mut hit = None;
    d.walk(ROOT, &mut |path, n| {
        if hit.is_none() && n.rule == Rule::Tag(tag) && pred(n) {
            hit = Some((path.to_string(), n.clone()));
        }
    });
    hit
}

struct Set {
    w: BigUint,
    out: Vec<Fixture>,
}

impl Set {
    fn push(&mut self, rule: RuleTag, label: &str, mode: Mode, root: D, expect: Expect) {
        let name = format!("{}/{label}", rule.name());
        self.out.push(Fixture { name, rule, doc: Document::new(mode, self.w.clone(), root), expect });
    }

    fn accept(&mut self, rule: RuleTag, label: &str, root: D) {
        self.push(rule, label, Mode::Seq, root, Expect::Accept);
    }

    fn reject(&mut self, rule: RuleTag, label: &str, root: D, path: &str, kind: ErrorKind) {
        self.push(rule, label, Mode::Seq, root, Expect::Reject { path: path.to_string(), kind });
    }
}

const R: &str = ROOT;
const SHAPE: ErrorKind = ErrorKind::Shape;
const SIDE: ErrorKind = ErrorKind::SideCondition;

/// At least one accepted and one rejected fixture per rule tag.
pub fn unit_fixtures() -> Vec<Fixture> {
    use RuleTag::*;
    let w = default_word_size();
    let b = Builder::new(default_registry(), EvalConfig::default());
    let mut s = Set { w: w.clone(), out: Vec::new() };
    let none: Telescope = Vec::new();
    let a_nat = tel(&[("a", "nat")]);
    let n = |k: u64| b.num(&none, &BigUint::from(k));
    let four0 = || b.to_cost0(n(4));

    s.accept(Hyp, "variable", b.hyp(&a_nat, "a"));
    s.reject(Hyp, "nonzero cost", node(Hyp, &a_nat, cost("a", "a", "nat", "1"), vec![]), R, SHAPE);

    let ab = tel(&[("a", "nat"), ("b", "nat")]);
    s.accept(Weaken, "append", node(Weaken, &ab, cost("a", "a", "nat", "0"), vec![b.hyp(&a_nat, "a")]));
    let ba = tel(&[("b", "nat"), ("a", "nat")]);
    let hyp_ba = b.hyp(&ba, "a");
    s.reject(Weaken, "reordered", node(Weaken, &ab, cost("a", "a", "nat", "0"), vec![hyp_ba]), R, SHAPE);

    let x_nat = tel(&[("x", "nat")]);
    let seq = b.seq2(n(3), b.nat_member(&x_nat, &e("(suc x)")));
    s.accept(Seq, "members", seq.clone());
    s.accept(Seq, "costs", b.seq3(four0(), b.hyp(&x_nat, "x")));
    s.accept(Seq, "vacuous", b.vacuous(n(3), b.type_refl(&none, &Expr::Nat)));
    s.reject(Seq, "wrong part", seq.clone().with_payload(Payload::part(1)), R, SHAPE);
    let x_member = b.to_member(b.hyp(&x_nat, "x"));
    let bad_vac = node(Seq, &x_nat, mem("(let 3 x x)", "x", "nat"), vec![b.num(&x_nat, &3u32.into()), x_member]);
    s.reject(Seq, "not vacuous", bad_vac.with_payload(Payload::part(4)), R, SIDE);

    let ohe = node(OpenHeadExp, &none, mem("(cff2 + 2 2)", "4", "nat"), vec![n(4)]).with_payload(steps(1));
    s.accept(OpenHeadExp, "closed", ohe.clone());
    let open = node(OpenHeadExp, &a_nat, mem("(let a x (suc x))", "(suc a)", "nat"), vec![b.nat_member(&a_nat, &e("(suc a)"))]);
    s.accept(OpenHeadExp, "open let", open.with_payload(steps(1)));
    let both = node(OpenHeadExp, &none, mem("(cff2 + 2 2)", "(cff2 × 2 2)", "nat"), vec![n(4)]);
    s.accept(OpenHeadExp, "both sides", both.with_payload(Payload { steps: Some(1), side: Some(Side::Both), ..Payload::default() }));
    s.reject(OpenHeadExp, "step count", ohe.with_payload(steps(2)), R, SIDE);

    s.accept(HeadExp, "cost", node(HeadExp, &none, cost("(cff2 + 2 2)", "4", "nat", "(suc 0)"), vec![four0()]));
    s.reject(HeadExp, "cost kept", node(HeadExp, &none, cost("(cff2 + 2 2)", "4", "nat", "0"), vec![four0()]), R, SHAPE);

    let pad_steps = Payload { steps: Some(1), steps_right: Some(0), ..Payload::default() };
    let pad = node(CostStepPad, &none, cost("(cff2 + 2 2)", "4", "nat", "(cff2 + 1 0)"), vec![four0()])
        .with_payload(pad_steps.clone());
    s.accept(CostStepPad, "one step", pad.clone());
    let short = node(CostStepPad, &none, cost("(cff2 + 2 2)", "4", "nat", "(cff2 + 0 0)"), vec![four0()]);
    s.reject(CostStepPad, "short padding", short.with_payload(pad_steps), R, SIDE);

    let plus10 = node(OpenHeadExp, &none, mem("(cff2 + 1 0)", "1", "nat"), vec![n(1)]).with_payload(steps(1));
    s.accept(CostReplace, "evaluate bound", node(CostReplace, &none, cost("(cff2 + 2 2)", "4", "nat", "1"), vec![pad.clone(), plus10]));
    let plus11 = node(OpenHeadExp, &none, mem("(cff2 + 1 1)", "2", "nat"), vec![n(2)]).with_payload(steps(1));
    s.reject(CostReplace, "other bound", node(CostReplace, &none, cost("(cff2 + 2 2)", "4", "nat", "2"), vec![pad, plus11]), R, SHAPE);

    let let_ty = b.seq2(n(3), b.nat_member(&tel(&[("v", "nat")]), &e("5")));
    s.accept(RespEq, "drop let", b.drop_let_type(n(3), let_ty.clone()));
    let refl = b.type_refl(&none, &Expr::Nat);
    s.reject(RespEq, "type mismatch", node(RespEq, &none, mem("(let 3 v 5)", "(let 3 v 5)", "nat"), vec![refl.clone(), let_ty]), R, SHAPE);

    s.accept(UnivF, "level 0", node(UnivF, &none, val("(univ 0)", "(univ 0)", "(univ 1)"), vec![]).with_payload(level(0)));
    s.accept(UnivF, "level 2", node(UnivF, &none, val("(univ 2)", "(univ 2)", "(univ 3)"), vec![]).with_payload(level(2)));
    s.reject(UnivF, "same level", node(UnivF, &none, val("(univ 0)", "(univ 0)", "(univ 0)"), vec![]).with_payload(level(0)), R, SHAPE);

    s.accept(UnivE, "nat", refl);
    s.reject(UnivE, "not a type", node(UnivE, &none, teq("3", "3"), vec![n(3)]), R, SHAPE);

    let eqf = b.type_member(&none, &e("(eq nat 1 2)"));
    s.accept(EqF, "false equality", eqf.clone());
    let mut eqf_up = eqf;
    eqf_up.conclusion.form = val("(eq nat 1 2)", "(eq nat 1 2)", "(univ 1)");
    s.reject(EqF, "universe", eqf_up, R, SHAPE);

    s.accept(EqI, "reflexive", node(EqI, &none, val("triv", "triv", "(eq nat 2 2)"), vec![n(2)]));
    s.reject(EqI, "different sides", node(EqI, &none, val("triv", "triv", "(eq nat 2 3)"), vec![n(2)]), R, SHAPE);

    let ap = tel(&[("a", "nat"), ("p", "(eq nat a 2)")]);
    let p_hyp = b.to_member(b.hyp(&ap, "p"));
    s.accept(EqE, "hypothesis", node(EqE, &ap, mem("a", "2", "nat"), vec![p_hyp]));
    let a_hyp = b.to_member(b.hyp(&ap, "a"));
    s.reject(EqE, "not an equality", node(EqE, &ap, mem("a", "2", "nat"), vec![a_hyp]), R, SHAPE);

    s.accept(NatF, "level 0", b.type_member(&none, &Expr::Nat));
    s.accept(NatF, "level 1", node(NatF, &none, val("nat", "nat", "(univ 1)"), vec![]).with_payload(level(1)));
    s.reject(NatF, "level", node(NatF, &none, val("nat", "nat", "(univ 0)"), vec![]).with_payload(level(1)), R, SHAPE);

    s.accept(NatIZero, "zero", n(0));
    s.reject(NatIZero, "one", node(NatIZero, &none, mem("1", "1", "nat"), vec![]), R, SHAPE);

    s.accept(NatISuc, "suc", b.nat_member(&a_nat, &e("(suc (suc a))")));
    let nat_ty = b.type_member(&none, &Expr::Nat);
    s.reject(NatISuc, "premise type", node(NatISuc, &none, mem("(suc nat)", "(suc nat)", "nat"), vec![nat_ty]), R, SHAPE);

    s.accept(NatINum, "literal", n(7));
    s.reject(NatINum, "computation", node(NatINum, &none, mem("(cff2 + 1 1)", "(cff2 + 1 1)", "nat"), vec![]), R, SHAPE);

    s.accept(FFE1, "sum", b.nat_member(&none, &e("(cff2 + 2 3)")));
    s.accept(FFE1, "guarded divisor", b.nat_member(&a_nat, &e("(cff2 % 4 (suc a))")));
    let div = node(FFE1, &a_nat, mem("(cff2 % 4 a)", "(cff2 % 4 a)", "nat"), vec![b.num(&a_nat, &4u32.into()), b.nat_member(&a_nat, &e("a"))]);
    s.reject(FFE1, "divisor may be zero", div, R, SIDE);

    let (v2, v3) = (b.to_value(n(2)), b.to_value(n(3)));
    s.accept(FFE2, "sum", node(FFE2, &none, cost("(cff2 + 2 3)", "(cff2 + 2 3)", "nat", "1"), vec![v2.clone(), v3.clone()]));
    s.reject(FFE2, "unregistered", node(FFE2, &none, cost("(cff2 frob 2 3)", "(cff2 frob 2 3)", "nat", "1"), vec![v2, v3]), R, SIDE);

    // nat_member wraps NatE1 in a RespEq that drops the motive's let.
    let nat_e1 = b.nat_member(&a_nat, &e("(ifz a 0 b b)")).premises.remove(1);
    s.accept(NatE1, "predecessor", nat_e1.clone());
    let mut no_motive = nat_e1;
    no_motive.premises.remove(0);
    s.reject(NatE1, "missing motive", no_motive, R, SHAPE);

    let countdown = scripts::countdown_document(&w).root;
    let (_, nat_e2) = find(&countdown, NatE2).expect("countdown cases");
    s.accept(NatE2, "countdown", nat_e2.clone());
    let mut swapped = nat_e2;
    swapped.premises.swap(4, 5);
    s.reject(NatE2, "branches swapped", swapped, R, SHAPE);

    let lt5 = "(subset x nat (rel2 < x 5))";
    s.accept(SubsetF, "bounded", b.type_member(&none, &e(lt5)));
    let mut subf = b.type_member(&none, &e(lt5));
    subf.conclusion.form = val("(subset x nat (rel2 < x 6))", "(subset x nat (rel2 < x 6))", "(univ 0)");
    s.reject(SubsetF, "other predicate", subf, R, SHAPE);

    let three_lt5 = b.subset_intro(b.to_cost0(n(3)), &e(lt5));
    s.accept(SubsetI, "in range", three_lt5.clone());
    s.reject(SubsetI, "out of range", b.subset_intro(b.to_cost0(n(7)), &e(lt5)), "root.3", SIDE);

    let in5 = tel(&[("a", lt5)]);
    s.accept(SubsetE, "forget", b.peel(b.hyp(&in5, "a")));
    let witness = node(SubsetE, &none, val("triv", "triv", "(rel2 < 3 5)"), vec![b.to_value(three_lt5)]);
    s.accept(SubsetE, "witness", witness.with_payload(Payload::part(2)));
    let open_w = node(SubsetE, &in5, val("triv", "triv", "(rel2 < a 5)"), vec![b.to_value(b.hyp(&in5, "a"))]);
    s.reject(SubsetE, "open witness", open_w.with_payload(Payload::part(2)), R, ErrorKind::Closedness);

    s.accept(RelF, "binary", b.type_member(&none, &e("(rel2 < 1 2)")));
    s.accept(RelF, "ternary", b.type_member(&a_nat, &e("(rel3 gcdProp a 4 6)")));
    let rel3 = node(RelF, &none, val("(rel3 gcdProp 1 2 3)", "(rel3 gcdProp 1 2 3)", "(univ 0)"), vec![n(1), n(2)]);
    s.reject(RelF, "arity", rel3, R, SHAPE);
    let unknown = node(RelF, &none, val("(rel2 ≺ 1 2)", "(rel2 ≺ 1 2)", "(univ 0)"), vec![n(1), n(2)]);
    s.reject(RelF, "unregistered", unknown, R, SIDE);

    s.accept(RelI, "less", node(RelI, &none, val("triv", "triv", "(rel2 < 2 3)"), vec![]));
    s.accept(RelI, "gcd", node(RelI, &none, val("triv", "triv", "(rel3 gcdProp 3 6 9)"), vec![]));
    s.reject(RelI, "false", node(RelI, &none, val("triv", "triv", "(rel2 < 3 2)"), vec![]), R, SIDE);
    s.reject(RelI, "open", node(RelI, &a_nat, val("triv", "triv", "(rel2 < 2 3)"), vec![]), R, ErrorKind::Closedness);

    let lt = node(RelI, &none, val("triv", "triv", "(rel2 < (cff2 + 1 1) 3)"), vec![]);
    let rel_e = |part: u8, f: Form| node(RelE, &none, f, vec![lt.clone()]).with_payload(Payload::part(part));
    s.accept(RelE, "first operand", rel_e(1, mem("(cff2 + 1 1)", "2", "nat")));
    s.reject(RelE, "position", rel_e(3, mem("(cff2 + 1 1)", "2", "nat")), R, SHAPE);

    let sig = "(sigma p nat (eq nat p 1))";
    s.accept(SigmaF, "dependent", b.type_member(&none, &e(sig)));
    let mut sigf = b.type_member(&none, &e(sig));
    sigf.conclusion.form = val("(sigma p nat (eq nat p 2))", "(sigma p nat (eq nat p 2))", "(univ 0)");
    s.reject(SigmaF, "other family", sigf, R, SHAPE);

    let refl1 = node(EqI, &none, val("triv", "triv", "(eq nat 1 1)"), vec![n(1)]);
    let sigma_ps = || {
        vec![b.type_member(&none, &Expr::Nat), b.type_member(&tel(&[("p", "nat")]), &e("(eq nat p 1)")), b.to_value(n(1)), refl1.clone()]
    };
    s.accept(SigmaI, "pair", node(SigmaI, &none, val("(pair 1 triv)", "(pair 1 triv)", sig), sigma_ps()));
    s.reject(SigmaI, "first component", node(SigmaI, &none, val("(pair 2 triv)", "(pair 2 triv)", sig), sigma_ps()), R, SHAPE);

    let pairs = tel(&[("s", "(sigma p nat nat)")]);
    s.accept(SigmaE, "first", b.proj(&pairs, &e("(fst s)")));
    s.accept(SigmaE, "second", b.proj(&tel(&[("s", sig)]), &e("(snd s)")));
    s.reject(SigmaE, "part", b.proj(&pairs, &e("(fst s)")).with_payload(Payload::part(3)), R, SHAPE);

    let ft = "(funtime a nat nat (suc a))";
    s.accept(FuntimeF, "linear", b.type_member(&none, &e(ft)));
    let mut ftf = b.type_member(&none, &e(ft));
    ftf.conclusion.form = val("(funtime a nat nat (suc (suc a)))", "(funtime a nat nat (suc (suc a)))", "(univ 0)");
    s.reject(FuntimeF, "cost", ftf, R, SHAPE);

    s.accept(FuntimeI, "countdown", countdown.clone());
    let clash = countdown.clone().with_payload(Payload { var: Some("a".into()), ..Payload::default() });
    s.reject(FuntimeI, "measure binder", clash, R, SIDE);

    let (_, fe) = find(&countdown, FuntimeE).expect("recursive call");
    s.accept(FuntimeE, "recursive call", fe.clone());
    let mut fe_cost = fe;
    if let Form::Cost { cost, .. } = &mut fe_cost.conclusion.form {
        let Expr::Suc(inner) = cost.clone() else { panic!("application cost is a successor") };
        *cost = (*inner).clone();
    }
    s.reject(FuntimeE, "missing step", fe_cost, R, SHAPE);

    let le = node(RelI, &none, val("triv", "triv", "(rel2 ≤ 0 5)"), vec![]);
    s.accept(CostWeaken, "closed", node(CostWeaken, &none, cost("3", "3", "nat", "5"), vec![b.to_cost0(n(3)), le]));
    let one_step = node(HeadExp, &none, cost("(cff2 + 2 2)", "4", "nat", "(suc 0)"), vec![four0()]);
    let below = b.inst(&none, &e("(rel2 ≤ (suc 0) 0)"));
    s.reject(CostWeaken, "below true cost", node(CostWeaken, &none, cost("(cff2 + 2 2)", "4", "nat", "0"), vec![one_step, below]), "root.1", SIDE);

    s.accept(ArithE, "remainder", b.arith(&none, &e("(arith % 7 3)")));
    s.accept(ArithE, "open", b.arith(&in5, &e("(arith ÷ a (suc a))")));
    let big = format!("(arith + {w} 1)");
    s.reject(ArithE, "word guard", b.arith(&none, &e(&big)), "root.2", SIDE);

    let bin = bin_seq(&b);
    s.push(BinSeq, "constants", Mode::Par, bin.clone(), Expect::Accept);
    s.reject(BinSeq, "sequential mode", bin, R, SIDE);

    s.accept(Conversion, "value", b.to_value(n(3)));
    s.accept(Conversion, "cost 0", four0());
    let stepped = node(HeadExp, &none, cost("(cff2 + 2 2)", "4", "nat", "(suc 0)"), vec![four0()]);
    s.reject(Conversion, "not a value", node(Conversion, &none, val("(cff2 + 2 2)", "4", "nat"), vec![stepped]), R, SIDE);

    s.accept(Instantiate, "successor bound", b.inst(&a_nat, &e("(rel2 < a (suc a))")));
    s.accept(Instantiate, "remainder", b.inst(&ap, &e("(rel2 < (arith % 7 (suc a)) 3)")));
    s.reject(Instantiate, "false bound", b.inst(&a_nat, &e("(rel2 < a 5)")), R, SIDE);
    s.reject(Instantiate, "not a proof term", node(Instantiate, &a_nat, mem("a", "a", "nat"), vec![]), R, SHAPE);

    s.out
}

/// `par(1, 2, x, y, x) ∈ nat` from constant components.
fn bin_seq(b: &Builder) -> D {
    let none: Telescope = Vec::new();
    let c = extend(&extend(&none, "x", Expr::Nat), "y", Expr::Nat);
    let (one, two) = (Expr::num(1), Expr::num(2));
    let comp = |k: u64| b.to_cost0(b.num(&none, &BigUint::from(k)));
    let nest = |body: Expr| Expr::let_(one.clone(), "x", Expr::let_(two.clone(), "y", body));
    let subject = par(one.clone(), two.clone(), "x", "y", Expr::var("x"));
    let f = Form::Cost {
        lhs: subject.clone(),
        rhs: subject,
        ty: nest(Expr::Nat),
        cost: Expr::plus(Expr::plus(Expr::max(Expr::num(0), Expr::num(0)), Expr::num(5)), nest(Expr::num(0))),
    };
    node(RuleTag::BinSeq, &none, f, vec![comp(1), comp(2), b.hyp(&c, "x")])
}

/// Corrupts the node at the first pre-order occurrence of `tag`.
fn corrupt(
    base: &'static str,
    doc: &Document,
    tag: RuleTag,
    name: &'static str,
    kind: ErrorKind,
    reported: &str,
    f: impl FnOnce(&mut D),
) -> Mutation {
    corrupt_where(base, doc, tag, |_| true, name, kind, reported, f)
}

#[allow(clippy::too_many_arguments)]
fn corrupt_where(
    base: &'static str,
    doc: &Document,
    tag: RuleTag,
    pick: impl Fn(&D) -> bool,
    name: &'static str,
    kind: ErrorKind,
    reported: &str,
    f: impl FnOnce(&mut D),
) -> Mutation {
    let (path, _) = find_where(&doc.root, tag, pick).unwrap_or_else(|| panic!("{base} has no matching {tag} node"));
    let mut doc = doc.clone();
    f(doc.root.at_mut(&path).expect("path from find"));
    let path = if reported.is_empty() { path } else { format!("{path}.{reported}") };
    Mutation { name, base, doc, path, kind }
}

fn set_cost(f: &mut Form, to: Expr) {
    if let Form::Cost { cost, .. } = f {
        *cost = to;
    }
}

fn word_guard(d: &D) -> bool {
    matches!(&d.conclusion.form, Form::Member { ty: Expr::Rel2 { rel, .. }, .. } if &**rel == "<")
}

/// Corrupted copies of the bundled derivations.
pub fn mutations(w: &BigUint) -> Vec<Mutation> {
    use RuleTag::*;
    let docs = scripts::bundled(w);
    let get = |id: &str| docs.iter().find(|(k, _)| *k == id).map(|(_, d)| d.clone()).expect("bundled id");
    let (gcd, fib, countdown) = (get("gcd"), get("fib-verified"), get("countdown"));
    vec![
        // Lower the target of a weakening and its ≤ premise together, so
        // the ordering claim itself is refuted.
        corrupt("gcd", &gcd, CostWeaken, "weakened below the true cost", SIDE, "1", |d| {
            let lower = Expr::num(1);
            set_cost(&mut d.conclusion.form, lower.clone());
            if let Form::Member { ty: Expr::Rel2 { args, .. }, .. } = &mut d.premises[1].conclusion.form {
                args[1] = lower.into();
            }
        }),
        corrupt("gcd", &gcd, OpenHeadExp, "expansion step count", SIDE, "", |d| {
            d.payload.steps = d.payload.steps.map(|k| k + 1);
        }),
        corrupt("gcd", &gcd, Hyp, "hypothesis with cost", SHAPE, "", |d| set_cost(&mut d.conclusion.form, Expr::num(1))),
        corrupt("gcd", &gcd, ArithE, "free arithmetic step", SHAPE, "", |d| set_cost(&mut d.conclusion.form, Expr::num(0))),
        corrupt_where("gcd", &gcd, Instantiate, word_guard, "false guard", SIDE, "", |d| {
            if let Form::Member { ty: Expr::Rel2 { args, .. }, .. } = &mut d.conclusion.form {
                args[1] = Expr::num(3).into();
            }
        }),
        corrupt("gcd", &gcd, NatE2, "branches swapped", SHAPE, "", |d| d.premises.swap(4, 5)),
        corrupt("gcd", &gcd, Seq, "wrong sequence part", SHAPE, "", |d| {
            d.payload.part = d.payload.part.map(|p| if p == 2 { 3 } else { 2 });
        }),
        corrupt("gcd", &gcd, FuntimeI, "measure binder clash", SIDE, "", |d| d.payload.var = Some("a".into())),
        corrupt("fib-verified", &fib, BinSeq, "binary sequence cost", SHAPE, "", |d| {
            if let Form::Cost { cost: Expr::Cff2 { args, .. }, .. } = &mut d.conclusion.form {
                args[0] = Expr::num(0).into();
            }
        }),
        corrupt("fib-verified", &fib, FFE1, "unregistered function", SIDE, "", |d| {
            if let Form::Member { lhs, rhs, .. } = &mut d.conclusion.form {
                for x in [lhs, rhs] {
                    if let Expr::Cff2 { func, .. } | Expr::Cff1 { func, .. } = x {
                        *func = name("frob");
                    }
                }
            }
        }),
        corrupt("countdown", &countdown, FuntimeE, "call without its step", SHAPE, "", |d| {
            if let Form::Cost { cost: c @ Expr::Suc(_), .. } = &mut d.conclusion.form {
                let Expr::Suc(inner) = c.clone() else { unreachable!() };
                *c = (*inner).clone();
            }
        }),
        corrupt("countdown", &countdown, NatIZero, "renamed rule", ErrorKind::UnknownTag, "", |d| {
            d.rule = Rule::Extension("NatI-one".into());
        }),
        corrupt("countdown", &countdown, Hyp, "variable out of scope", ErrorKind::Scope, "", |d| {
            d.conclusion.ctx.clear();
        }),
    ]
}
