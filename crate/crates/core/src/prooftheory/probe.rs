//! Entry points that combine the checker with the semantic oracle.

use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::eval::eval_in;
use crate::judgment::Form;
use crate::registry::Registry;
use crate::semantics::{Semantics, TestBudget, Verdict, Witness};
use crate::syntax::{self, print, Expr};

use super::{CheckReport, Checker, Derivation, DocError, Document, Rule, RuleTag, ROOT};

/// A checker for `doc` under `reg` and `budget`, configured from the
/// document's mode and word size.
pub fn checker_for(doc: &Document, reg: &Registry, budget: &TestBudget) -> Checker {
    Checker::new(Semantics::new(reg.clone(), doc.config()).with_budget(budget.clone()))
}

pub fn check_derivation(doc: &Document, reg: &Registry, budget: &TestBudget) -> CheckReport {
    checker_for(doc, reg, budget).check(&doc.root)
}

#[derive(Debug, Error)]
pub enum ScriptError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Doc { path: String, source: DocError },
}

#[derive(Clone, Debug, Serialize)]
pub struct ScriptReport {
    pub script: String,
    pub verdict: Verdict,
    pub nodes: usize,
    pub depth: usize,
    pub millis: u64,
    pub report: CheckReport,
}

pub fn check_script(path: &Path, reg: &Registry, budget: &TestBudget) -> Result<ScriptReport, ScriptError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| ScriptError::Io { path: shown.clone(), source })?;
    let doc = Document::from_json(&text).map_err(|source| ScriptError::Doc { path: shown.clone(), source })?;
    Ok(check_document(&shown, &doc, reg, budget))
}

pub fn check_document(name: &str, doc: &Document, reg: &Registry, budget: &TestBudget) -> ScriptReport {
    let start = Instant::now();
    let report = check_derivation(doc, reg, budget);
    ScriptReport {
        script: name.to_string(),
        verdict: report.verdict(),
        nodes: doc.root.size(),
        depth: depth(&doc.root),
        millis: start.elapsed().as_millis() as u64,
        report,
    }
}

fn depth(d: &Derivation) -> usize {
    1 + d.premises.iter().map(depth).max().unwrap_or(0)
}

/// Reads an accepted derivation's conclusion semantically. A rejected
/// derivation gives no evidence either way.
pub fn soundness_probe(checker: &Checker, d: &Derivation) -> Verdict {
    let report = checker.check(d);
    if !report.is_ok() {
        return Verdict::unknown(format!("derivation rejected: {}", report.first().expect("an error")));
    }
    match checker.sem.check_open(&d.conclusion) {
        Ok(v) => v,
        Err(e) => Verdict::unknown(e.to_string()),
    }
}

/// Every node with a closed cost conclusion, checked by `member_cost`.
pub fn closed_costs(checker: &Checker, d: &Derivation) -> Vec<(String, Verdict)> {
    let mut nodes: Vec<(String, Form)> = Vec::new();
    d.walk(ROOT, &mut |path, n| {
        if n.conclusion.is_closed() && matches!(n.conclusion.form, Form::Cost { .. }) {
            nodes.push((path.to_string(), n.conclusion.form.clone()));
        }
    });
    let verdicts = checker.sem.exec.map(&nodes, |(path, f)| checker.sem.check_closed(f).at_path(path));
    nodes.into_iter().map(|(p, _)| p).zip(verdicts).collect()
}

/// Arguments of the calls to `fun` made while evaluating `ap(fun, v)`,
/// read off the evaluation trace. Calls under untaken `ifz` branches or
/// inside function bodies are not counted.
pub fn recursive_calls(sem: &Semantics, fun: &Expr, v: &Expr) -> Result<Vec<Expr>, Verdict> {
    let cfg = sem.config.clone().with_trace(true);
    let run = eval_in(&Expr::ap(fun.clone(), v.clone()), &sem.registry, &cfg, sem.mode())
        .map_err(|e| Verdict::unknown(format!("evaluation: {e}")))?;
    let trace = run.trace.unwrap_or_default();
    let mut out: Vec<Expr> = Vec::new();
    for t in trace.iter().skip(1) {
        calls_in(t, fun, &mut out);
    }
    Ok(out)
}

fn calls_in(e: &Expr, fun: &Expr, out: &mut Vec<Expr>) {
    match e {
        Expr::Ap(f, u) if f.alpha_eq(fun) && u.is_value() && u.is_closed() => {
            if !out.contains(u) {
                out.push((**u).clone());
            }
        }
        Expr::Fun { .. } => {}
        Expr::Ifz { scrut, .. } => calls_in(scrut, fun, out),
        _ => {
            for (_, c) in e.children() {
                calls_in(c, fun, out);
            }
        }
    }
}

/// For an accepted FuntimeI conclusion `fun f a. M ∈ funtime(a, A, B, P)`,
/// checks at sampled arguments `V` that every recursive call's argument
/// `U` has `P[U/a] < P[V/a]`.
pub fn decrease_probe(sem: &Semantics, node: &Derivation) -> Verdict {
    if node.rule != Rule::Tag(RuleTag::FuntimeI) {
        return Verdict::unknown("not a FuntimeI node");
    }
    let Form::Value { lhs: fun, ty: Expr::Funtime { var, dom, cost, .. }, .. } = &node.conclusion.form else {
        return Verdict::unknown("FuntimeI conclusion is not a funtime value judgment");
    };
    if !node.conclusion.is_closed() {
        return Verdict::unknown("open FuntimeI conclusions are not probed");
    }
    let den = match sem.type_denote(dom) {
        Ok(d) => d,
        Err(e) => return e.verdict(),
    };
    let args = match sem.sample_values(&den, sem.budget.samples, &format!("decrease:{}", print(fun)), &[]) {
        Ok(a) => a,
        Err(e) => return Verdict::unknown(e.to_string()),
    };
    let n = args.len() as u64;
    let verdicts = sem.exec.map(&args, |v| {
        let at = |u: &Expr| sem.measure(cost, var, u).map_err(|e| Verdict::unknown(format!("measure at {u}: {e}")));
        let top = match at(v) {
            Ok(k) => k,
            Err(verdict) => return verdict,
        };
        let calls = match recursive_calls(sem, fun, v) {
            Ok(c) => c,
            Err(verdict) => return verdict,
        };
        for u in &calls {
            match at(u) {
                Ok(k) if k < top => {}
                Ok(k) => {
                    let mut w = Witness::about(format!("measure {k} at recursive argument {u} is not below {top}"), v);
                    w.instance = vec![(var.to_string(), print(v))];
                    return Verdict::fails(w);
                }
                Err(verdict) => return verdict,
            }
        }
        Verdict::holds()
    });
    Verdict::all(verdicts).with_tested(n)
}

/// Renames every bound variable in every judgment of `d`. Context
/// variables keep their names.
pub fn rename_bound(d: &Derivation, tag: &str) -> Derivation {
    d.map_exprs(&|e| syntax::rename_bound(e, tag))
}
