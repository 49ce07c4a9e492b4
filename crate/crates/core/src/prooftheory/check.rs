use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::eval::{eval_numeral, symbolic_run};
use crate::judgment::{Form, Judgment};
use crate::registry::{Kind, Mode};
use crate::semantics::{Semantics, Verdict, Witness};
use crate::syntax::{par, print, subst1, Expr, Name, Telescope};

use super::{child_path, Derivation, Rule, RuleTag, Side, ROOT};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorKind {
    /// Premise count, judgment forms, contexts or the conclusion do not
    /// fit the rule.
    Shape,
    /// A side condition (evaluation, step count, registry, sampling)
    /// does not hold.
    SideCondition,
    /// A closed-only rule was used under hypotheses.
    Closedness,
    /// A context or judgment mentions an unbound variable.
    Scope,
    UnknownTag,
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ErrorKind::Shape => "shape",
            ErrorKind::SideCondition => "side condition",
            ErrorKind::Closedness => "closedness",
            ErrorKind::Scope => "scope",
            ErrorKind::UnknownTag => "unknown tag",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Error)]
#[error("{path} ({rule}): {kind}: {message}")]
pub struct CheckError {
    pub path: String,
    pub rule: String,
    pub kind: ErrorKind,
    pub message: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub instance: Vec<(String, String)>,
}

/// A rule supplied by the caller. Premises are checked before `check`
/// runs on the node.
pub trait Extension: Send + Sync {
    fn check(&self, checker: &Checker, node: &Derivation) -> Result<(), String>;
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub nodes: usize,
    /// Every failing node, children before parents.
    pub errors: Vec<CheckError>,
    /// Context instances drawn by `Instantiate` nodes.
    pub sampled: u64,
    pub rules: BTreeMap<String, usize>,
    /// Time spent on each rule's local check, premises excluded.
    pub micros: BTreeMap<String, u64>,
}

impl CheckReport {
    pub fn is_ok(&self) -> bool {
        self.errors.is_empty()
    }

    /// The first failure in post-order.
    pub fn first(&self) -> Option<&CheckError> {
        self.errors.first()
    }

    pub fn verdict(&self) -> Verdict {
        match self.first() {
            None => Verdict::holds().with_tested(self.sampled),
            Some(e) => Verdict::fails(Witness {
                message: format!("{}: {}", e.rule, e.message),
                instance: e.instance.clone(),
                subject: None,
                path: Some(e.path.clone()),
            }),
        }
    }

    fn absorb(&mut self, other: CheckReport) {
        self.nodes += other.nodes;
        self.errors.extend(other.errors);
        self.sampled += other.sampled;
        for (k, v) in other.rules {
            *self.rules.entry(k).or_default() += v;
        }
        for (k, v) in other.micros {
            *self.micros.entry(k).or_default() += v;
        }
    }
}

struct Fail {
    kind: ErrorKind,
    message: String,
    instance: Vec<(String, String)>,
}

fn shape(message: impl Into<String>) -> Fail {
    Fail { kind: ErrorKind::Shape, message: message.into(), instance: Vec::new() }
}

fn side(message: impl Into<String>) -> Fail {
    Fail { kind: ErrorKind::SideCondition, message: message.into(), instance: Vec::new() }
}

type Local = Result<u64, Fail>;

/// Rebuilds conclusions from premises and decides side conditions.
#[derive(Clone)]
pub struct Checker {
    pub sem: Semantics,
    extensions: BTreeMap<String, Arc<dyn Extension>>,
}

impl fmt::Debug for Checker {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Checker")
            .field("sem", &self.sem)
            .field("extensions", &self.extensions.keys().collect::<Vec<_>>())
            .finish()
    }
}

impl Checker {
    pub fn new(sem: Semantics) -> Self {
        Checker { sem, extensions: BTreeMap::new() }
    }

    pub fn with_extension(mut self, name: &str, ext: impl Extension + 'static) -> Self {
        self.extensions.insert(name.to_string(), Arc::new(ext));
        self
    }

    pub fn mode(&self) -> Mode {
        self.sem.config.mode
    }

    pub fn check(&self, d: &Derivation) -> CheckReport {
        self.check_at(d, ROOT)
    }

    fn check_at(&self, d: &Derivation, path: &str) -> CheckReport {
        let indexed: Vec<(usize, &Derivation)> = d.premises.iter().enumerate().collect();
        let children = self.sem.exec.map(&indexed, |(i, p)| self.check_at(p, &child_path(path, *i)));
        let mut report = CheckReport::default();
        for c in children {
            report.absorb(c);
        }
        report.nodes += 1;
        *report.rules.entry(d.rule.name().to_string()).or_default() += 1;
        let start = Instant::now();
        let local = self.local(d);
        *report.micros.entry(d.rule.name().to_string()).or_default() += start.elapsed().as_micros() as u64;
        match local {
            Ok(n) => report.sampled += n,
            Err(f) => report.errors.push(CheckError {
                path: path.to_string(),
                rule: d.rule.name().to_string(),
                kind: f.kind,
                message: f.message,
                instance: f.instance,
            }),
        }
        report
    }

    fn local(&self, d: &Derivation) -> Local {
        if let Some(why) = d.conclusion.scope_error() {
            return Err(Fail { kind: ErrorKind::Scope, message: why, instance: Vec::new() });
        }
        match &d.rule {
            Rule::Tag(t) => self.rule(*t, d),
            Rule::Extension(name) => match self.extensions.get(name) {
                Some(ext) => ext.check(self, d).map(|_| 0).map_err(side),
                None => Err(Fail {
                    kind: ErrorKind::UnknownTag,
                    message: format!("no rule named `{name}`"),
                    instance: Vec::new(),
                }),
            },
        }
    }

    fn rule(&self, tag: RuleTag, d: &Derivation) -> Local {
        use RuleTag::*;
        let n = Node { d, gamma: &d.conclusion.ctx, c: &d.conclusion.form };
        match tag {
            Hyp => {
                n.arity(0)?;
                let (x, _, _, _) = n.concl_cost()?;
                let Expr::Var(v) = x else { return Err(shape("subject is not a variable")) };
                let a = d.conclusion.lookup(v).ok_or_else(|| shape(format!("`{v}` is not in the context")))?;
                n.expect(Form::Cost { lhs: x.clone(), rhs: x.clone(), ty: a.clone(), cost: Expr::num(0) })?;
            }
            Weaken => {
                n.arity(1)?;
                let p = n.p(0);
                let mut it = p.ctx.iter().peekable();
                for (x, a) in n.gamma {
                    if let Some((y, b)) = it.peek() {
                        if x == y && a.alpha_eq(b) {
                            it.next();
                        }
                    }
                }
                if let Some((y, _)) = it.next() {
                    return Err(shape(format!("premise binder `{y}` is not kept in order")));
                }
                n.expect(p.form.clone())?;
            }
            Seq => self.seq(&n)?,
            OpenHeadExp => {
                n.arity(1)?;
                let k = d.payload.steps.ok_or_else(|| shape("OpenHeadExp needs a step count"))?;
                n.ctx(0, n.gamma)?;
                let s = d.payload.side.unwrap_or(Side::Left);
                self.expand(&n, k, s, false)?;
            }
            HeadExp => {
                n.arity(1)?;
                n.ctx(0, n.gamma)?;
                let s = d.payload.side.unwrap_or(Side::Left);
                self.expand(&n, 1, s, true)?;
            }
            CostStepPad => {
                n.arity(1)?;
                n.ctx(0, n.gamma)?;
                let (m, m2, a, p) = n.cost(0)?;
                let (l, r, _, _) = n.concl_cost()?;
                let Expr::Cff2 { func, args } = n.concl_cost()?.3 else {
                    return Err(shape("conclusion cost is not a padding `cff2 + Q P`"));
                };
                if &**func != "+" {
                    return Err(shape("conclusion cost is not a padding `cff2 + Q P`"));
                }
                let q = &*args[0];
                n.expect(Form::Cost {
                    lhs: l.clone(),
                    rhs: r.clone(),
                    ty: a.clone(),
                    cost: Expr::plus(q.clone(), p.clone()),
                })?;
                let c1 = d.payload.steps.unwrap_or(0);
                let c2 = d.payload.steps_right.unwrap_or(c1);
                self.reaches(l, m, c1, "left")?;
                self.reaches(r, m2, c2, "right")?;
                if !q.is_closed() {
                    return Err(side("padding must be closed"));
                }
                let qv = self.numeral(q)?;
                if qv < BigUint::from(c1.max(c2)) {
                    return Err(side(format!("padding {qv} is below the {} steps taken", c1.max(c2))));
                }
            }
            CostReplace => {
                n.arity(2)?;
                n.ctx(0, n.gamma)?;
                n.ctx(1, n.gamma)?;
                let (m, m2, a, p) = n.cost(0)?;
                let (q, q2, t) = n.member(1)?;
                n.same(q, p, "premise 2 left side", "the cost of premise 1")?;
                n.same(t, &Expr::Nat, "premise 2 type", "nat")?;
                n.expect(Form::Cost { lhs: m.clone(), rhs: m2.clone(), ty: a.clone(), cost: q2.clone() })?;
            }
            RespEq => {
                n.arity(2)?;
                n.ctx(0, n.gamma)?;
                n.ctx(1, n.gamma)?;
                let (a, a2) = n.type_eq(0)?;
                let want = match &n.p(1).form {
                    Form::Member { lhs, rhs, ty } => {
                        n.same(ty, a, "premise 2 type", "the left side of premise 1")?;
                        Form::Member { lhs: lhs.clone(), rhs: rhs.clone(), ty: a2.clone() }
                    }
                    Form::Value { lhs, rhs, ty } => {
                        n.same(ty, a, "premise 2 type", "the left side of premise 1")?;
                        Form::Value { lhs: lhs.clone(), rhs: rhs.clone(), ty: a2.clone() }
                    }
                    Form::Cost { lhs, rhs, ty, cost } => {
                        n.same(ty, a, "premise 2 type", "the left side of premise 1")?;
                        Form::Cost { lhs: lhs.clone(), rhs: rhs.clone(), ty: a2.clone(), cost: cost.clone() }
                    }
                    Form::TypeEq { .. } => return Err(shape("premise 2 must be a membership")),
                };
                n.expect(want)?;
            }
            UnivF => {
                n.arity(0)?;
                let i = d.payload.level.unwrap_or(0);
                n.expect(Form::Value { lhs: Expr::Univ(i), rhs: Expr::Univ(i), ty: Expr::Univ(i + 1) })?;
            }
            UnivE => {
                n.arity(1)?;
                n.ctx(0, n.gamma)?;
                let (a, a2, u) = n.member(0)?;
                univ_level(u).ok_or_else(|| shape("premise type is not a universe"))?;
                n.expect(Form::TypeEq { lhs: a.clone(), rhs: a2.clone() })?;
            }
            EqF => {
                n.arity(3)?;
                for i in 0..3 {
                    n.ctx(i, n.gamma)?;
                }
                let (a, a2, u) = n.member(0)?;
                univ_level(u).ok_or_else(|| shape("premise 1 type is not a universe"))?;
                let (m, m2, t1) = n.member(1)?;
                let (k, k2, t2) = n.member(2)?;
                n.same(t1, a, "premise 2 type", "the type of premise 1")?;
                n.same(t2, a, "premise 3 type", "the type of premise 1")?;
                n.expect(Form::Value {
                    lhs: Expr::eq(a.clone(), m.clone(), k.clone()),
                    rhs: Expr::eq(a2.clone(), m2.clone(), k2.clone()),
                    ty: u.clone(),
                })?;
            }
            EqI => {
                n.arity(1)?;
                n.ctx(0, n.gamma)?;
                let (m, m2, a) = n.member(0)?;
                n.expect(Form::Value { lhs: Expr::Triv, rhs: Expr::Triv, ty: Expr::eq(a.clone(), m.clone(), m2.clone()) })?;
            }
            EqE => {
                n.arity(1)?;
                n.ctx(0, n.gamma)?;
                let (_, _, t) = n.member(0)?;
                let Expr::Eq { ty, lhs, rhs } = t else { return Err(shape("premise type is not an equality")) };
                n.expect(Form::Member { lhs: (**lhs).clone(), rhs: (**rhs).clone(), ty: (**ty).clone() })?;
            }
            NatF => {
                n.arity(0)?;
                let i = d.payload.level.unwrap_or(0);
                n.expect(Form::Value { lhs: Expr::Nat, rhs: Expr::Nat, ty: Expr::Univ(i) })?;
            }
            NatIZero => {
                n.arity(0)?;
                n.expect(Form::Member { lhs: Expr::zero(), rhs: Expr::zero(), ty: Expr::Nat })?;
            }
            NatINum => {
                n.arity(0)?;
                let (l, _, _) = n.concl_member()?;
                if l.as_numeral().is_none() {
                    return Err(shape("subject is not a numeral literal"));
                }
                n.expect(Form::Member { lhs: l.clone(), rhs: l.clone(), ty: Expr::Nat })?;
            }
            NatISuc => {
                n.arity(1)?;
                n.ctx(0, n.gamma)?;
                let (m, m2, t) = n.member(0)?;
                n.same(t, &Expr::Nat, "premise type", "nat")?;
                n.expect(Form::Member { lhs: Expr::suc(m.clone()), rhs: Expr::suc(m2.clone()), ty: Expr::Nat })?;
            }
            FFE1 | FFE2 => self.ffe(&n, tag == FFE2)?,
            NatE1 => self.nat_e1(&n)?,
            NatE2 => self.nat_e2(&n)?,
            SubsetF | SigmaF => {
                n.arity(2)?;
                n.ctx(0, n.gamma)?;
                let (a, a2, u) = n.member(0)?;
                univ_level(u).ok_or_else(|| shape("premise 1 type is not a universe"))?;
                let ext = n.ext(1, n.gamma, 1)?;
                let x = &ext[0].0;
                n.same(&ext[0].1, a, "premise 2 binder type", "the subject of premise 1")?;
                let (b, b2, u2) = n.member(1)?;
                n.same(u2, u, "premise 2 universe", "the universe of premise 1")?;
                let (l, r) = if tag == SubsetF {
                    (Expr::subset(x, a.clone(), b.clone()), Expr::subset(x, a2.clone(), b2.clone()))
                } else {
                    (Expr::sigma(x, a.clone(), b.clone()), Expr::sigma(x, a2.clone(), b2.clone()))
                };
                n.expect(Form::Value { lhs: l, rhs: r, ty: u.clone() })?;
            }
            SubsetI => {
                n.arity(4)?;
                n.ctx(0, n.gamma)?;
                let (a, _, u) = n.member(0)?;
                univ_level(u).ok_or_else(|| shape("premise 1 type is not a universe"))?;
                let ext = n.ext(1, n.gamma, 1)?;
                let x = &ext[0].0;
                n.same(&ext[0].1, a, "premise 2 binder type", "the subject of premise 1")?;
                let (b, _, u2) = n.member(1)?;
                n.same(u2, u, "premise 2 universe", "the universe of premise 1")?;
                n.ctx(2, n.gamma)?;
                let (m, m2, t, p) = n.cost(2)?;
                n.same(t, a, "premise 3 type", "the subject of premise 1")?;
                n.ctx(3, n.gamma)?;
                let (_, _, t4) = n.member(3)?;
                n.same(t4, &Expr::let_(m.clone(), x, b.clone()), "premise 4 type", "the family at the subject")?;
                n.expect(Form::Cost {
                    lhs: m.clone(),
                    rhs: m2.clone(),
                    ty: Expr::subset(x, a.clone(), b.clone()),
                    cost: p.clone(),
                })?;
            }
            SubsetE => self.subset_e(&n)?,
            RelF => {
                let (l, _, u) = n.concl_value()?;
                univ_level(u).ok_or_else(|| shape("conclusion type is not a universe"))?;
                let (rel, kind) = match l {
                    Expr::Rel2 { rel, .. } => (rel, Kind::Rel2),
                    Expr::Rel3 { rel, .. } => (rel, Kind::Rel3),
                    _ => return Err(shape("subject is not a relation type")),
                };
                n.arity(if kind == Kind::Rel2 { 2 } else { 3 })?;
                if !self.sem.registry.contains(kind, rel) {
                    return Err(side(format!("`{rel}` is not a registered {kind}")));
                }
                let mut ls = Vec::new();
                let mut rs = Vec::new();
                for i in 0..d.premises.len() {
                    n.ctx(i, n.gamma)?;
                    let (m, m2, t) = n.member(i)?;
                    n.same(t, &Expr::Nat, &format!("premise {} type", i + 1), "nat")?;
                    ls.push(m.clone());
                    rs.push(m2.clone());
                }
                let build = |v: Vec<Expr>| match kind {
                    Kind::Rel2 => Expr::rel2(rel, v[0].clone(), v[1].clone()),
                    _ => Expr::rel3(rel, v[0].clone(), v[1].clone(), v[2].clone()),
                };
                n.expect(Form::Value { lhs: build(ls), rhs: build(rs), ty: u.clone() })?;
            }
            RelI => {
                n.closed_only()?;
                n.arity(0)?;
                let (_, _, t) = n.concl_value()?;
                n.expect(Form::Value { lhs: Expr::Triv, rhs: Expr::Triv, ty: t.clone() })?;
                self.relation_holds(t)?;
            }
            RelE => {
                n.closed_only()?;
                n.arity(1)?;
                let (_, _, t) = n.member(0)?;
                let args = self.relation_holds(t)?;
                let pos = d.payload.part.ok_or_else(|| shape("RelE needs an operand position"))? as usize;
                let (exprs, vals) = args;
                if pos == 0 || pos > exprs.len() {
                    return Err(shape(format!("position {pos} is out of range")));
                }
                n.expect(Form::Member {
                    lhs: exprs[pos - 1].clone(),
                    rhs: Expr::Num(vals[pos - 1].clone()),
                    ty: Expr::Nat,
                })?;
            }
            SigmaI => {
                n.arity(4)?;
                n.ctx(0, n.gamma)?;
                let (a, _, u) = n.member(0)?;
                univ_level(u).ok_or_else(|| shape("premise 1 type is not a universe"))?;
                let ext = n.ext(1, n.gamma, 1)?;
                let x = ext[0].0.clone();
                n.same(&ext[0].1, a, "premise 2 binder type", "the subject of premise 1")?;
                let (b, _, _) = n.member(1)?;
                n.ctx(2, n.gamma)?;
                let (v, v2, t1) = n.value(2)?;
                n.same(t1, a, "premise 3 type", "the subject of premise 1")?;
                n.ctx(3, n.gamma)?;
                let (w, w2, t2) = n.value(3)?;
                n.same(t2, &subst1(b, &x, v), "premise 4 type", "the family at the first component")?;
                n.expect(Form::Value {
                    lhs: Expr::pair(v.clone(), w.clone()),
                    rhs: Expr::pair(v2.clone(), w2.clone()),
                    ty: Expr::sigma(&x, a.clone(), b.clone()),
                })?;
            }
            SigmaE => {
                n.arity(1)?;
                n.ctx(0, n.gamma)?;
                let (v, v2, t) = n.value(0)?;
                let Expr::Sigma { var, fst, snd } = t else { return Err(shape("premise type is not a sigma")) };
                let want = match d.payload.part.unwrap_or(1) {
                    1 => Form::Cost {
                        lhs: Expr::fst(v.clone()),
                        rhs: Expr::fst(v2.clone()),
                        ty: (**fst).clone(),
                        cost: Expr::num(1),
                    },
                    2 => Form::Cost {
                        lhs: Expr::snd(v.clone()),
                        rhs: Expr::snd(v2.clone()),
                        ty: Expr::let_(Expr::fst(v.clone()), var, (**snd).clone()),
                        cost: Expr::num(1),
                    },
                    k => return Err(shape(format!("SigmaE has parts 1 and 2, not {k}"))),
                };
                n.expect(want)?;
            }
            FuntimeF => {
                n.arity(3)?;
                n.ctx(0, n.gamma)?;
                let (a, a2, u) = n.member(0)?;
                univ_level(u).ok_or_else(|| shape("premise 1 type is not a universe"))?;
                let ext = n.ext(1, n.gamma, 1)?;
                let x = ext[0].0.clone();
                n.same(&ext[0].1, a, "premise 2 binder type", "the subject of premise 1")?;
                let (b, b2, u2) = n.member(1)?;
                n.same(u2, u, "premise 2 universe", "the universe of premise 1")?;
                n.ctx(2, &n.p(1).ctx)?;
                let (p, p2, t) = n.member(2)?;
                n.same(t, &Expr::Nat, "premise 3 type", "nat")?;
                n.expect(Form::Value {
                    lhs: Expr::funtime(&x, a.clone(), b.clone(), p.clone()),
                    rhs: Expr::funtime(&x, a2.clone(), b2.clone(), p2.clone()),
                    ty: u.clone(),
                })?;
            }
            FuntimeI => self.funtime_i(&n)?,
            FuntimeE => {
                n.arity(2)?;
                n.ctx(0, n.gamma)?;
                n.ctx(1, n.gamma)?;
                let (f, f2, t) = n.value(0)?;
                let Expr::Funtime { var, dom, cod, cost } = t else {
                    return Err(shape("premise 1 type is not a funtime type"));
                };
                let (v, v2, t2) = n.value(1)?;
                n.same(t2, dom, "premise 2 type", "the domain")?;
                n.expect(Form::Cost {
                    lhs: Expr::ap(f.clone(), v.clone()),
                    rhs: Expr::ap(f2.clone(), v2.clone()),
                    ty: subst1(cod, var, v),
                    cost: Expr::suc(subst1(cost, var, v)),
                })?;
            }
            CostWeaken => {
                n.arity(2)?;
                n.ctx(0, n.gamma)?;
                n.ctx(1, n.gamma)?;
                let (m, m2, a, p) = n.cost(0)?;
                let (_, _, t) = n.member(1)?;
                let Expr::Rel2 { rel, args } = t else { return Err(shape("premise 2 type is not `rel2 ≤ P P'`")) };
                if &**rel != "≤" {
                    return Err(shape("premise 2 type is not `rel2 ≤ P P'`"));
                }
                n.same(&args[0], p, "premise 2 lower bound", "the cost of premise 1")?;
                n.expect(Form::Cost { lhs: m.clone(), rhs: m2.clone(), ty: a.clone(), cost: (*args[1]).clone() })?;
            }
            ArithE => self.arith_e(&n)?,
            BinSeq => self.bin_seq(&n)?,
            Conversion => self.conversion(&n)?,
            Instantiate => return self.instantiate(&n),
        }
        Ok(0)
    }

    fn seq(&self, n: &Node<'_>) -> Result<(), Fail> {
        n.arity(2)?;
        n.ctx(0, n.gamma)?;
        let part = n.d.payload.part.ok_or_else(|| shape("Seq needs a part"))?;
        if part == 4 {
            let (m, _, _) = n.member(0)?;
            n.ctx(1, n.gamma)?;
            let Some(Expr::Let { bound, var, body }) = n.c.exprs().first().copied() else {
                return Err(shape("conclusion subject is not a let"));
            };
            n.same(bound, m, "bound term", "the subject of premise 1")?;
            let want = match &n.p(1).form {
                Form::TypeEq { lhs, rhs } => {
                    n.same(body, lhs, "let body", "the left side of premise 2")?;
                    Form::TypeEq { lhs: Expr::let_(m.clone(), var, lhs.clone()), rhs: rhs.clone() }
                }
                Form::Member { lhs, rhs, ty } => {
                    n.same(body, lhs, "let body", "the left side of premise 2")?;
                    Form::Member { lhs: Expr::let_(m.clone(), var, lhs.clone()), rhs: rhs.clone(), ty: ty.clone() }
                }
                _ => return Err(shape("premise 2 must be a type equality or a membership")),
            };
            if body.has_free(var) {
                return Err(side(format!("`{var}` occurs in the body, so the let is not vacuous")));
            }
            return n.expect(want);
        }
        let ext = n.ext(1, n.gamma, 1)?;
        let x = ext[0].0.clone();
        let bound_ty = &ext[0].1;
        let want = match part {
            1 => {
                let (m, m2, a) = n.member(0)?;
                n.same(bound_ty, a, "premise 2 binder type", "the type of premise 1")?;
                let (b, b2) = n.type_eq(1)?;
                Form::TypeEq { lhs: Expr::let_(m.clone(), &x, b.clone()), rhs: Expr::let_(m2.clone(), &x, b2.clone()) }
            }
            2 => {
                let (m, m2, a) = n.member(0)?;
                n.same(bound_ty, a, "premise 2 binder type", "the type of premise 1")?;
                let (k, k2, b) = n.member(1)?;
                Form::Member {
                    lhs: Expr::let_(m.clone(), &x, k.clone()),
                    rhs: Expr::let_(m2.clone(), &x, k2.clone()),
                    ty: Expr::let_(m.clone(), &x, b.clone()),
                }
            }
            3 => {
                let (m, m2, a, p) = n.cost(0)?;
                n.same(bound_ty, a, "premise 2 binder type", "the type of premise 1")?;
                let (k, k2, b, q) = n.cost(1)?;
                Form::Cost {
                    lhs: Expr::let_(m.clone(), &x, k.clone()),
                    rhs: Expr::let_(m2.clone(), &x, k2.clone()),
                    ty: Expr::let_(m.clone(), &x, b.clone()),
                    cost: Expr::plus(p.clone(), Expr::suc(Expr::let_(m.clone(), &x, q.clone()))),
                }
            }
            k => return Err(shape(format!("Seq has parts 1 to 4, not {k}"))),
        };
        n.expect(want)
    }

    /// `from ↦^k to` by symbolic steps in the document mode.
    fn reaches(&self, from: &Expr, to: &Expr, k: u64, which: &str) -> Result<(), Fail> {
        if k == 0 {
            return if from.alpha_eq(to) {
                Ok(())
            } else {
                Err(side(format!("{which}: {from} is not {to}")))
            };
        }
        let run = symbolic_run(from, &self.sem.registry, &self.sem.config, self.mode(), k)
            .map_err(|e| side(format!("{which}: {e}")))?;
        match run.last() {
            Some(last) if run.len() as u64 == k && last.alpha_eq(to) => Ok(()),
            Some(last) if run.len() as u64 == k => {
                Err(side(format!("{which}: {from} reaches {last} in {k} steps, not {to}")))
            }
            _ => Err(side(format!("{which}: {from} stops after {} of {k} steps", run.len()))),
        }
    }

    fn expand(&self, n: &Node<'_>, k: u64, s: Side, cost: bool) -> Result<(), Fail> {
        let p = &n.p(0).form;
        let (left, right) = (matches!(s, Side::Left | Side::Both), matches!(s, Side::Right | Side::Both));
        let pick = |found: &Expr, prem: &Expr, on: bool, which: &str| -> Result<Expr, Fail> {
            if on {
                self.reaches(found, prem, k, which)?;
                Ok(found.clone())
            } else {
                Ok(prem.clone())
            }
        };
        let (cl, cr) = match n.c {
            Form::TypeEq { lhs, rhs } | Form::Member { lhs, rhs, .. } | Form::Cost { lhs, rhs, .. } => (lhs, rhs),
            Form::Value { .. } => return Err(shape("head expansion does not apply to value judgments")),
        };
        let want = match p {
            Form::TypeEq { lhs, rhs } if !cost || k == 1 => {
                Form::TypeEq { lhs: pick(cl, lhs, left, "left")?, rhs: pick(cr, rhs, right, "right")? }
            }
            Form::Member { lhs, rhs, ty } => Form::Member {
                lhs: pick(cl, lhs, left, "left")?,
                rhs: pick(cr, rhs, right, "right")?,
                ty: ty.clone(),
            },
            Form::Cost { lhs, rhs, ty, cost: c } if cost => Form::Cost {
                lhs: pick(cl, lhs, left, "left")?,
                rhs: pick(cr, rhs, right, "right")?,
                ty: ty.clone(),
                cost: Expr::suc(c.clone()),
            },
            other => return Err(shape(format!("premise form {} is not expandable here", other.kind()))),
        };
        n.expect(want)
    }

    fn numeral(&self, e: &Expr) -> Result<BigUint, Fail> {
        eval_numeral(e, &self.sem.registry, &self.sem.config).map_err(|err| side(format!("{e}: {err}")))
    }

    fn nonzero_form(e: &Expr) -> bool {
        match e {
            Expr::Suc(_) => true,
            Expr::Num(k) => !k.is_zero(),
            _ => false,
        }
    }

    fn check_function(&self, func: &Name, arity: usize, divisor: Option<&Expr>) -> Result<(), Fail> {
        let kind = if arity == 1 { Kind::Unary } else { Kind::Binary };
        if !self.sem.registry.contains(kind, func) {
            return Err(side(format!("`{func}` is not a registered {kind}")));
        }
        if let Some(dv) = divisor {
            if self.sem.registry.requires_nonzero_rhs(func) && !Self::nonzero_form(dv) {
                return Err(side(format!("`{func}` needs a divisor of the form suc _ or a positive numeral, not {dv}")));
            }
        }
        Ok(())
    }

    fn ffe(&self, n: &Node<'_>, values: bool) -> Result<(), Fail> {
        let Some(subject) = n.c.exprs().first().copied() else { unreachable!() };
        let (func, arity) = match subject {
            Expr::Cff1 { func, .. } => (func, 1),
            Expr::Cff2 { func, .. } => (func, 2),
            _ => return Err(shape("subject is not a cff1 or cff2 application")),
        };
        n.arity(arity)?;
        let mut ls = Vec::new();
        let mut rs = Vec::new();
        for i in 0..arity {
            n.ctx(i, n.gamma)?;
            let (m, m2, t) = if values { n.value(i)? } else { n.member(i)? };
            n.same(t, &Expr::Nat, &format!("premise {} type", i + 1), "nat")?;
            ls.push(m.clone());
            rs.push(m2.clone());
        }
        self.check_function(func, arity, if arity == 2 { Some(&ls[1]) } else { None })?;
        if arity == 2 {
            self.check_function(func, arity, Some(&rs[1]))?;
        }
        let build = |v: &[Expr]| {
            if arity == 1 {
                Expr::cff1(func, v[0].clone())
            } else {
                Expr::cff2(func, v[0].clone(), v[1].clone())
            }
        };
        let (l, r) = (build(&ls), build(&rs));
        n.expect(if values {
            Form::Cost { lhs: l, rhs: r, ty: Expr::Nat, cost: Expr::num(1) }
        } else {
            Form::Member { lhs: l, rhs: r, ty: Expr::Nat }
        })
    }

    fn arith_e(&self, n: &Node<'_>) -> Result<(), Fail> {
        let Some(subject) = n.c.exprs().first().copied() else { unreachable!() };
        let (func, arity) = match subject {
            Expr::Op { func, .. } => (func, 1),
            Expr::Arith { func, .. } => (func, 2),
            _ => return Err(shape("subject is not an op or arith application")),
        };
        n.arity(2 * arity)?;
        let w = Expr::Num(self.sem.config.word_size.clone());
        let mut ls = Vec::new();
        let mut rs = Vec::new();
        for i in 0..arity {
            n.ctx(i, n.gamma)?;
            let (v, v2, t) = n.value(i)?;
            n.same(t, &Expr::Nat, &format!("premise {} type", i + 1), "nat")?;
            ls.push(v.clone());
            rs.push(v2.clone());
        }
        for i in 0..arity {
            n.ctx(arity + i, n.gamma)?;
            let (_, _, t) = n.member(arity + i)?;
            n.same(t, &Expr::rel2("<", ls[i].clone(), w.clone()), &format!("premise {} type", arity + i + 1), "the word guard")?;
        }
        self.check_function(func, arity, if arity == 2 { Some(&ls[1]) } else { None })?;
        if arity == 2 {
            self.check_function(func, arity, Some(&rs[1]))?;
        }
        let (l, r) = if arity == 1 {
            (Expr::op(func, ls[0].clone()), Expr::op(func, rs[0].clone()))
        } else {
            (Expr::arith(func, ls[0].clone(), ls[1].clone()), Expr::arith(func, rs[0].clone(), rs[1].clone()))
        };
        n.expect(Form::Cost { lhs: l, rhs: r, ty: Expr::Nat, cost: Expr::num(1) })
    }

    /// The motive premise `Γ, a:nat ⊢ A ∈ U_i`; returns `a` and `A`.
    fn motive<'a>(&self, n: &Node<'a>) -> Result<(Name, &'a Expr), Fail> {
        let ext = n.ext(0, n.gamma, 1)?;
        n.same(&ext[0].1, &Expr::Nat, "motive binder type", "nat")?;
        let (a, _, u) = n.member(0)?;
        univ_level(u).ok_or_else(|| shape("premise 1 type is not a universe"))?;
        Ok((ext[0].0.clone(), a))
    }

    /// Checks a branch context `Γ, p : eq(nat, 0, M)` or
    /// `Γ, b : nat, q : eq(nat, suc b, M)`; returns `b` for the latter.
    fn branch(&self, n: &Node<'_>, i: usize, scrut: &Expr, succ: bool) -> Result<Option<Name>, Fail> {
        if !succ {
            let ext = n.ext(i, n.gamma, 1)?;
            n.same(&ext[0].1, &Expr::eq(Expr::Nat, Expr::zero(), scrut.clone()), "zero branch hypothesis", "eq(nat, 0, M)")?;
            return Ok(None);
        }
        let ext = n.ext(i, n.gamma, 2)?;
        let b = ext[0].0.clone();
        n.same(&ext[0].1, &Expr::Nat, "successor branch binder type", "nat")?;
        n.same(
            &ext[1].1,
            &Expr::eq(Expr::Nat, Expr::suc(Expr::Var(b.clone())), scrut.clone()),
            "successor branch hypothesis",
            "eq(nat, suc b, M)",
        )?;
        Ok(Some(b))
    }

    fn nat_e1(&self, n: &Node<'_>) -> Result<(), Fail> {
        n.arity(4)?;
        let (a, motive) = self.motive(n)?;
        n.ctx(1, n.gamma)?;
        let (m, m2, t) = n.member(1)?;
        n.same(t, &Expr::Nat, "premise 2 type", "nat")?;
        self.branch(n, 2, m, false)?;
        let (z, z2, tz) = n.member(2)?;
        n.same(tz, &subst1(motive, &a, &Expr::zero()), "premise 3 type", "the motive at 0")?;
        let b = self.branch(n, 3, m, true)?.expect("successor branch");
        let (s, s2, ts) = n.member(3)?;
        n.same(ts, &subst1(motive, &a, &Expr::suc(Expr::Var(b.clone()))), "premise 4 type", "the motive at suc b")?;
        n.expect(Form::Member {
            lhs: Expr::ifz(m.clone(), z.clone(), &b, s.clone()),
            rhs: Expr::ifz(m2.clone(), z2.clone(), &b, s2.clone()),
            ty: Expr::let_(m.clone(), &a, motive.clone()),
        })
    }

    fn nat_e2(&self, n: &Node<'_>) -> Result<(), Fail> {
        n.arity(6)?;
        let (a, motive) = self.motive(n)?;
        n.ctx(1, n.gamma)?;
        let (v, v2, t) = n.value(1)?;
        n.same(t, &Expr::Nat, "premise 2 type", "nat")?;
        n.ctx(2, n.gamma)?;
        let (p0, _, t0) = n.member(2)?;
        n.same(t0, &Expr::Nat, "premise 3 type", "nat")?;
        let ext = n.ext(3, n.gamma, 1)?;
        let b4 = ext[0].0.clone();
        n.same(&ext[0].1, &Expr::Nat, "premise 4 binder type", "nat")?;
        let (p1, _, t1) = n.member(3)?;
        n.same(t1, &Expr::Nat, "premise 4 type", "nat")?;
        self.branch(n, 4, v, false)?;
        let (z, z2, tz, c0) = n.cost(4)?;
        n.same(tz, &subst1(motive, &a, &Expr::zero()), "premise 5 type", "the motive at 0")?;
        n.same(c0, p0, "premise 5 cost", "the bound of premise 3")?;
        let b = self.branch(n, 5, v, true)?.expect("successor branch");
        if b != b4 {
            return Err(shape(format!("premise 4 binds `{b4}` but premise 6 binds `{b}`")));
        }
        let (s, s2, ts, c1) = n.cost(5)?;
        n.same(ts, &subst1(motive, &a, &Expr::suc(Expr::Var(b.clone()))), "premise 6 type", "the motive at suc b")?;
        n.same(c1, p1, "premise 6 cost", "the bound of premise 4")?;
        n.expect(Form::Cost {
            lhs: Expr::ifz(v.clone(), z.clone(), &b, s.clone()),
            rhs: Expr::ifz(v2.clone(), z2.clone(), &b, s2.clone()),
            ty: subst1(motive, &a, v),
            cost: Expr::ifz(v.clone(), Expr::suc(p0.clone()), &b, Expr::suc(p1.clone())),
        })
    }

    fn subset_e(&self, n: &Node<'_>) -> Result<(), Fail> {
        n.arity(1)?;
        n.ctx(0, n.gamma)?;
        let ty_of = |t: &Expr| match t {
            Expr::Subset { var, base, pred } => Ok((var.clone(), (**base).clone(), (**pred).clone())),
            _ => Err(shape("premise type is not a subset")),
        };
        match n.d.payload.part.unwrap_or(1) {
            1 => {
                let want = match &n.p(0).form {
                    Form::Member { lhs, rhs, ty } => {
                        Form::Member { lhs: lhs.clone(), rhs: rhs.clone(), ty: ty_of(ty)?.1 }
                    }
                    Form::Value { lhs, rhs, ty } => Form::Value { lhs: lhs.clone(), rhs: rhs.clone(), ty: ty_of(ty)?.1 },
                    Form::Cost { lhs, rhs, ty, cost } => {
                        Form::Cost { lhs: lhs.clone(), rhs: rhs.clone(), ty: ty_of(ty)?.1, cost: cost.clone() }
                    }
                    Form::TypeEq { .. } => return Err(shape("premise must be a membership")),
                };
                n.expect(want)
            }
            2 => {
                n.closed_only()?;
                let (v, _, t) = n.value(0)?;
                let (x, _, pred) = ty_of(t)?;
                let (u, u2, ty) = n.concl_value()?;
                n.same(ty, &subst1(&pred, &x, v), "conclusion type", "the predicate at the subject")?;
                for w in [u, u2] {
                    if !proof_term(w) {
                        return Err(shape(format!("witness {w} is not built from triv and pair")));
                    }
                }
                let want = Form::Value { lhs: u.clone(), rhs: u2.clone(), ty: ty.clone() };
                let v = self.sem.check_closed(&want);
                if v.is_holds() {
                    Ok(())
                } else {
                    Err(side(format!("witness does not inhabit the predicate: {}", reason(&v))))
                }
            }
            k => Err(shape(format!("SubsetE has parts 1 and 2, not {k}"))),
        }
    }

    /// Closed relation type whose arguments evaluate and satisfy it.
    fn relation_holds(&self, t: &Expr) -> Result<(Vec<Expr>, Vec<BigUint>), Fail> {
        let (rel, args, kind): (&Name, Vec<Expr>, Kind) = match t {
            Expr::Rel2 { rel, args } => (rel, args.iter().map(|a| (**a).clone()).collect(), Kind::Rel2),
            Expr::Rel3 { rel, args } => (rel, args.iter().map(|a| (**a).clone()).collect(), Kind::Rel3),
            _ => return Err(shape("type is not a relation")),
        };
        if !self.sem.registry.contains(kind, rel) {
            return Err(side(format!("`{rel}` is not a registered {kind}")));
        }
        let vals = args.iter().map(|a| self.numeral(a)).collect::<Result<Vec<_>, _>>()?;
        let holds = match kind {
            Kind::Rel2 => self.sem.registry.holds2(rel, &vals[0], &vals[1]),
            _ => self.sem.registry.holds3(rel, &vals[0], &vals[1], &vals[2]),
        }
        .map_err(|e| side(e.to_string()))?;
        if !holds {
            let shown: Vec<String> = vals.iter().map(|v| v.to_string()).collect();
            return Err(side(format!("{rel}({}) is false", shown.join(", "))));
        }
        Ok((args, vals))
    }

    fn funtime_i(&self, n: &Node<'_>) -> Result<(), Fail> {
        n.arity(4)?;
        n.ctx(0, n.gamma)?;
        let (a, _, u) = n.member(0)?;
        univ_level(u).ok_or_else(|| shape("premise 1 type is not a universe"))?;
        let ext = n.ext(1, n.gamma, 1)?;
        let x = ext[0].0.clone();
        n.same(&ext[0].1, a, "premise 2 binder type", "the domain")?;
        let (b, _, u2) = n.member(1)?;
        n.same(u2, u, "premise 2 universe", "the universe of premise 1")?;
        n.ctx(2, &n.p(1).ctx)?;
        let (p, _, tp) = n.member(2)?;
        n.same(tp, &Expr::Nat, "premise 3 type", "nat")?;
        let ext4 = n.ext(3, n.gamma, 2)?;
        if ext4[0].0 != x {
            return Err(shape(format!("premise 4 binds `{}` where `{x}` was expected", ext4[0].0)));
        }
        n.same(&ext4[0].1, a, "premise 4 argument type", "the domain")?;
        let f = ext4[1].0.clone();
        let x2 = n.d.payload.var.as_deref().ok_or_else(|| shape("FuntimeI needs the name of the measure binder"))?;
        if x2 == &*x || a.has_free(x2) || p.has_free(x2) {
            return Err(side(format!("measure binder `{x2}` is not fresh")));
        }
        let smaller = Expr::subset(x2, a.clone(), Expr::rel2("<", subst1(p, &x, &Expr::var(x2)), p.clone()));
        let hyp = Expr::funtime(&x, smaller, b.clone(), p.clone());
        n.same(&ext4[1].1, &hyp, "recursive hypothesis", "the decreasing funtime type")?;
        let (body, body2, tb, pb) = n.cost(3)?;
        n.same(tb, b, "body type", "the codomain")?;
        n.same(pb, p, "body cost", "the cost bound")?;
        n.expect(Form::Value {
            lhs: Expr::fun(&f, &x, body.clone()),
            rhs: Expr::fun(&f, &x, body2.clone()),
            ty: Expr::funtime(&x, a.clone(), b.clone(), p.clone()),
        })
    }

    fn bin_seq(&self, n: &Node<'_>) -> Result<(), Fail> {
        if self.mode() != Mode::Par {
            return Err(side("BinSeq needs parallel mode"));
        }
        n.arity(3)?;
        n.ctx(0, n.gamma)?;
        n.ctx(1, n.gamma)?;
        let (m1, m1b, a1, p1) = n.cost(0)?;
        let (m2, m2b, a2, p2) = n.cost(1)?;
        let ext = n.ext(2, n.gamma, 2)?;
        let (x1, x2) = (ext[0].0.clone(), ext[1].0.clone());
        n.same(&ext[0].1, a1, "first binder type", "the type of premise 1")?;
        n.same(&ext[1].1, a2, "second binder type", "the type of premise 2")?;
        if m2.has_free(&x1) || m2b.has_free(&x1) {
            return Err(side(format!("`{x1}` occurs in the second component")));
        }
        let (k, k2, b, q) = n.cost(2)?;
        let nest = |e: &Expr| Expr::let_(m1.clone(), &x1, Expr::let_(m2.clone(), &x2, e.clone()));
        n.expect(Form::Cost {
            lhs: par(m1.clone(), m2.clone(), &x1, &x2, k.clone()),
            rhs: par(m1b.clone(), m2b.clone(), &x1, &x2, k2.clone()),
            ty: nest(b),
            cost: Expr::plus(Expr::plus(Expr::max(p1.clone(), p2.clone()), Expr::num(5)), nest(q)),
        })
    }

    fn conversion(&self, n: &Node<'_>) -> Result<(), Fail> {
        n.arity(1)?;
        n.ctx(0, n.gamma)?;
        let p = &n.p(0).form;
        let values = |l: &Expr, r: &Expr| l.is_value() && r.is_value();
        let want = match (p, n.c) {
            (Form::Value { lhs, rhs, ty }, Form::Cost { .. }) => {
                Form::Cost { lhs: lhs.clone(), rhs: rhs.clone(), ty: ty.clone(), cost: Expr::num(0) }
            }
            (Form::Value { lhs, rhs, ty }, Form::Member { .. }) => {
                Form::Member { lhs: lhs.clone(), rhs: rhs.clone(), ty: ty.clone() }
            }
            (Form::Cost { lhs, rhs, ty, cost }, Form::Value { .. }) => {
                if cost.as_u64() != Some(0) || !values(lhs, rhs) {
                    return Err(side("only values at cost 0 convert to value judgments"));
                }
                Form::Value { lhs: lhs.clone(), rhs: rhs.clone(), ty: ty.clone() }
            }
            (Form::Cost { lhs, rhs, ty, .. }, Form::Member { .. }) => {
                Form::Member { lhs: lhs.clone(), rhs: rhs.clone(), ty: ty.clone() }
            }
            (Form::Member { lhs, rhs, ty }, Form::Value { .. }) => {
                if !values(lhs, rhs) {
                    return Err(side("only values convert to value judgments"));
                }
                Form::Value { lhs: lhs.clone(), rhs: rhs.clone(), ty: ty.clone() }
            }
            (from, to) => return Err(shape(format!("no conversion from {} to {}", from.kind(), to.kind()))),
        };
        n.expect(want)
    }

    fn instantiate(&self, n: &Node<'_>) -> Local {
        n.arity(0)?;
        let (s, s2, ty) = n.concl_member()?;
        for w in [s, s2] {
            if !proof_term(w) {
                return Err(shape(format!("subject {w} is not built from triv and pair")));
            }
        }
        let form = Form::Member { lhs: s.clone(), rhs: s2.clone(), ty: ty.clone() };
        let j = Judgment::new(n.gamma.clone(), form.clone());
        let instances = self.sem.instances_for(&j).map_err(|e| side(e.to_string()))?;
        let results = self.sem.exec.map(&instances, |g| self.sem.check_closed(&form.subst(g)));
        for (g, v) in instances.iter().zip(results) {
            if !v.is_holds() || v.tested > 0 {
                let why = if v.is_holds() { "holds only on samples".to_string() } else { reason(&v) };
                return Err(Fail {
                    kind: ErrorKind::SideCondition,
                    message: format!("instance does not decide the claim: {why}"),
                    instance: g.iter().map(|(x, e)| (x.to_string(), print(e))).collect(),
                });
            }
        }
        Ok(instances.len() as u64)
    }
}

fn reason(v: &Verdict) -> String {
    match &v.outcome {
        crate::semantics::Outcome::Holds => "holds".into(),
        crate::semantics::Outcome::Fails { witness } => witness.message.clone(),
        crate::semantics::Outcome::Unknown { reason } => format!("unknown: {reason}"),
    }
}

/// Canonical proofs of equalities, relations and their products.
pub(crate) fn proof_term(e: &Expr) -> bool {
    match e {
        Expr::Triv => true,
        Expr::Pair(l, r) => proof_term(l) && proof_term(r),
        _ => false,
    }
}

fn univ_level(e: &Expr) -> Option<u32> {
    match e {
        Expr::Univ(i) => Some(*i),
        _ => None,
    }
}

/// A node under check, with accessors that turn mismatches into errors.
struct Node<'a> {
    d: &'a Derivation,
    gamma: &'a Telescope,
    c: &'a Form,
}

type Three<'a> = (&'a Expr, &'a Expr, &'a Expr);
type Four<'a> = (&'a Expr, &'a Expr, &'a Expr, &'a Expr);

impl<'a> Node<'a> {
    fn p(&self, i: usize) -> &'a Judgment {
        &self.d.premises[i].conclusion
    }

    fn arity(&self, k: usize) -> Result<(), Fail> {
        let got = self.d.premises.len();
        if got == k {
            Ok(())
        } else {
            Err(shape(format!("expected {k} premises, found {got}")))
        }
    }

    fn closed_only(&self) -> Result<(), Fail> {
        if self.gamma.is_empty() {
            Ok(())
        } else {
            Err(Fail {
                kind: ErrorKind::Closedness,
                message: format!("{} only applies without hypotheses", self.d.rule),
                instance: Vec::new(),
            })
        }
    }

    fn expect(&self, want: Form) -> Result<(), Fail> {
        if self.c.alpha_eq(&want) {
            Ok(())
        } else {
            Err(shape(format!("conclusion should be {want}, found {}", self.c)))
        }
    }

    fn same(&self, found: &Expr, want: &Expr, what: &str, against: &str) -> Result<(), Fail> {
        if found.alpha_eq(want) {
            Ok(())
        } else {
            Err(shape(format!("{what} {found} does not match {against} {want}")))
        }
    }

    fn ctx(&self, i: usize, gamma: &Telescope) -> Result<(), Fail> {
        if Judgment::ctx_alpha_eq(&self.p(i).ctx, gamma) {
            Ok(())
        } else {
            Err(shape(format!("premise {} has a different context", i + 1)))
        }
    }

    fn ext(&self, i: usize, gamma: &Telescope, k: usize) -> Result<&'a [(Name, Expr)], Fail> {
        let pc = &self.p(i).ctx;
        if pc.len() != gamma.len() + k || !Judgment::ctx_alpha_eq(&pc[..gamma.len()].to_vec(), gamma) {
            return Err(shape(format!("premise {} context should extend the conclusion's by {k}", i + 1)));
        }
        Ok(&pc[gamma.len()..])
    }

    fn member(&self, i: usize) -> Result<Three<'a>, Fail> {
        match &self.p(i).form {
            Form::Member { lhs, rhs, ty } | Form::Value { lhs, rhs, ty } => Ok((lhs, rhs, ty)),
            other => Err(shape(format!("premise {} should be a membership, found {}", i + 1, other.kind()))),
        }
    }

    fn value(&self, i: usize) -> Result<Three<'a>, Fail> {
        match &self.p(i).form {
            Form::Value { lhs, rhs, ty } => Ok((lhs, rhs, ty)),
            Form::Member { lhs, rhs, ty } if lhs.is_value() && rhs.is_value() => Ok((lhs, rhs, ty)),
            other => Err(shape(format!("premise {} should be a value judgment, found {}", i + 1, other.kind()))),
        }
    }

    fn cost(&self, i: usize) -> Result<Four<'a>, Fail> {
        match &self.p(i).form {
            Form::Cost { lhs, rhs, ty, cost } => Ok((lhs, rhs, ty, cost)),
            other => Err(shape(format!("premise {} should be a cost judgment, found {}", i + 1, other.kind()))),
        }
    }

    fn type_eq(&self, i: usize) -> Result<(&'a Expr, &'a Expr), Fail> {
        match &self.p(i).form {
            Form::TypeEq { lhs, rhs } => Ok((lhs, rhs)),
            other => Err(shape(format!("premise {} should be a type equality, found {}", i + 1, other.kind()))),
        }
    }

    fn concl_cost(&self) -> Result<Four<'a>, Fail> {
        match self.c {
            Form::Cost { lhs, rhs, ty, cost } => Ok((lhs, rhs, ty, cost)),
            other => Err(shape(format!("conclusion should be a cost judgment, found {}", other.kind()))),
        }
    }

    fn concl_member(&self) -> Result<Three<'a>, Fail> {
        match self.c {
            Form::Member { lhs, rhs, ty } | Form::Value { lhs, rhs, ty } => Ok((lhs, rhs, ty)),
            other => Err(shape(format!("conclusion should be a membership, found {}", other.kind()))),
        }
    }

    fn concl_value(&self) -> Result<Three<'a>, Fail> {
        match self.c {
            Form::Value { lhs, rhs, ty } => Ok((lhs, rhs, ty)),
            other => Err(shape(format!("conclusion should be a value judgment, found {}", other.kind()))),
        }
    }
}
