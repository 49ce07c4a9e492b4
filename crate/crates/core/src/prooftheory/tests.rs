use super::*;
use crate::judgment::Judgment;
use crate::syntax::Expr;
use crate::registry::{default_registry, default_word_size};
use crate::semantics::Semantics;

fn checker(doc: &Document) -> Checker {
    Checker::new(Semantics::new(default_registry(), doc.config()))
}

#[test]
fn bundled_derivations_check() {
    for w in [default_word_size(), 8u32.into()] {
        for (id, doc) in scripts::bundled(&w) {
            let r = checker(&doc).check(&doc.root);
            assert!(r.is_ok(), "{id} at w={w}: {} nodes, errors: {:#?}", r.nodes, &r.errors[..r.errors.len().min(5)]);
        }
    }
}

fn outcome(doc: &Document) -> CheckReport {
    checker(doc).check(&doc.root)
}

#[test]
fn unit_fixtures_meet_expectations() {
    let mut bad = Vec::new();
    for fx in fixtures::unit_fixtures() {
        let r = outcome(&fx.doc);
        match (&fx.expect, r.first()) {
            (fixtures::Expect::Accept, None) => {}
            (fixtures::Expect::Reject { path, kind }, Some(e)) if &e.path == path && e.kind == *kind => {}
            (want, got) => bad.push(format!("{}: wanted {want:?}, got {got:?}", fx.name)),
        }
    }
    assert!(bad.is_empty(), "{}", bad.join("\n"));
}

#[test]
fn every_rule_has_both_verdicts() {
    let fxs = fixtures::unit_fixtures();
    for tag in RuleTag::ALL {
        let of = |accept: bool| {
            fxs.iter().filter(|f| f.rule == *tag && (f.expect == fixtures::Expect::Accept) == accept).count()
        };
        assert!(of(true) > 0 && of(false) > 0, "{tag}: {} accepted, {} rejected", of(true), of(false));
    }
}

#[test]
fn mutations_fail_at_the_corrupted_node() {
    let mut bad = Vec::new();
    let muts = fixtures::mutations(&default_word_size());
    assert!(muts.len() >= 10);
    for m in muts {
        let r = outcome(&m.doc);
        match r.first() {
            Some(e) if e.path == m.path && e.kind == m.kind => {}
            got => bad.push(format!("{} ({}): wanted {} {:?}, got {got:?}", m.name, m.base, m.path, m.kind)),
        }
    }
    assert!(bad.is_empty(), "{}", bad.join("\n"));
}

#[test]
fn bundled_conclusions_probe_sound() {
    for (id, doc) in scripts::bundled(&default_word_size()) {
        let c = checker(&doc);
        let v = soundness_probe(&c, &doc.root);
        assert!(v.is_holds(), "{id}: {v:?}");
        for (path, v) in closed_costs(&c, &doc.root) {
            assert!(!v.is_fails(), "{id} {path}: {v:?}");
        }
        let (_, node) = fixtures::find(&doc.root, RuleTag::FuntimeI).expect("FuntimeI root");
        let v = decrease_probe(&c.sem, &node);
        assert!(v.is_holds() && v.tested > 0, "{id}: {v:?}");
    }
}

#[test]
fn hypothesis_probe_holds() {
    let doc = fixtures::unit_fixtures().into_iter().find(|f| f.name == "Hyp/variable").unwrap().doc;
    let v = soundness_probe(&checker(&doc), &doc.root);
    assert!(v.is_holds() && v.tested > 0, "{v:?}");
}

/// Admits any cost-0 judgment, which is unsound as soon as the subject
/// takes a step.
struct AdmitZeroCost;

impl Extension for AdmitZeroCost {
    fn check(&self, _: &Checker, node: &Derivation) -> Result<(), String> {
        match &node.conclusion.form {
            crate::judgment::Form::Cost { cost, .. } if cost.as_u64() == Some(0) => Ok(()),
            _ => Err("only cost 0 is admitted".into()),
        }
    }
}

#[test]
fn unsound_extension_is_caught_by_the_probe() {
    let fake = Derivation::new(
        Rule::Extension("AdmitZeroCost".into()),
        Judgment::closed(crate::judgment::Form::Cost {
            lhs: crate::syntax::parse("(fst (pair 0 0))").unwrap(),
            rhs: Expr::zero(),
            ty: Expr::Nat,
            cost: Expr::zero(),
        }),
        vec![],
    );
    let doc = Document::new(crate::registry::Mode::Seq, default_word_size(), fake.clone());
    let plain = checker(&doc);
    assert_eq!(plain.check(&fake).first().map(|e| e.kind), Some(ErrorKind::UnknownTag));
    let c = plain.with_extension("AdmitZeroCost", AdmitZeroCost);
    assert!(c.check(&fake).is_ok());
    let v = soundness_probe(&c, &fake);
    assert!(v.is_fails(), "{v:?}");
}

#[test]
fn non_decreasing_recursion_is_caught() {
    // The measure is constant, so the recursive call does not decrease it.
    let p = |s: &str| crate::syntax::parse(s).unwrap();
    let node = Derivation::new(
        RuleTag::FuntimeI,
        Judgment::closed(crate::judgment::Form::Value {
            lhs: p("(fun f a (ifz a 0 b (ap f b)))"),
            rhs: p("(fun f a (ifz a 0 b (ap f b)))"),
            ty: p("(funtime a nat nat 5)"),
        }),
        vec![],
    );
    let doc = Document::new(crate::registry::Mode::Seq, default_word_size(), node.clone());
    let v = decrease_probe(&checker(&doc).sem, &node);
    assert!(v.is_fails(), "{v:?}");
}

#[test]
fn renaming_bound_variables_keeps_verdicts() {
    let mut docs: Vec<(String, Document)> =
        fixtures::unit_fixtures().into_iter().map(|f| (f.name, f.doc)).collect();
    docs.push(("countdown".into(), scripts::countdown_document(&default_word_size())));
    for (name, doc) in docs {
        let c = checker(&doc);
        let before = c.check(&doc.root);
        let after = c.check(&rename_bound(&doc.root, "r"));
        assert_eq!(
            before.first().map(|e| &e.path),
            after.first().map(|e| &e.path),
            "{name}: {:?}",
            after.first()
        );
    }
}
