use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::registry::{Mode, Registry};
use crate::syntax::{subst1, subst_map, Expr, Name};

use super::{StepError, StuckReason};

/// Result of trying to step one subterm.
pub(crate) enum Out {
    Value,
    Next(Expr),
    /// A redex is waiting on a free variable.
    Blocked(Name),
}

pub(crate) struct Cx<'a> {
    pub reg: &'a Registry,
    pub word_size: &'a BigUint,
    pub mode: Mode,
}

fn stuck(term: &Expr, reason: StuckReason) -> Result<Out, StepError> {
    Err(StepError { term: term.clone(), reason })
}

/// The numeral inside a value, or the reason it is not one.
fn numeral(v: &Expr) -> Result<&BigUint, Option<Name>> {
    match v {
        Expr::Num(k) => Ok(k),
        Expr::Var(x) => Err(Some(x.clone())),
        Expr::Suc(inner) => match numeral(inner) {
            Err(Some(x)) => Err(Some(x)),
            _ => Err(None),
        },
        _ => Err(None),
    }
}

fn arc(e: Expr) -> Arc<Expr> {
    Arc::new(e)
}

impl Cx<'_> {
    pub(crate) fn step(&self, e: &Expr) -> Result<Out, StepError> {
        use Expr::*;
        match e {
            Var(_) | Funtime { .. } | Pi { .. } | Fun { .. } | Nat | Num(_) | Sigma { .. }
            | Eq { .. } | Triv | Subset { .. } | Univ(_) | Rel2 { .. } | Rel3 { .. } => Ok(Out::Value),
            Suc(x) => Ok(match self.step(x)? {
                Out::Next(x2) => Out::Next(Expr::suc(x2)),
                other => other,
            }),
            Ap(f, x) => match self.two(f, x)? {
                Two::Next(f2, x2) => Ok(Out::Next(Ap(f2, x2))),
                Two::Blocked(v) => Ok(Out::Blocked(v)),
                Two::Values => self.beta_ap(e, f, x),
            },
            Pair(l, r) => match self.two(l, r)? {
                Two::Next(l2, r2) => Ok(Out::Next(Pair(l2, r2))),
                Two::Blocked(v) => Ok(Out::Blocked(v)),
                Two::Values => Ok(Out::Value),
            },
            Ifz { scrut, zero, var, succ } => match self.step(scrut)? {
                Out::Next(s2) => Ok(Out::Next(Ifz {
                    scrut: arc(s2),
                    zero: zero.clone(),
                    var: var.clone(),
                    succ: succ.clone(),
                })),
                Out::Blocked(v) => Ok(Out::Blocked(v)),
                Out::Value => match &**scrut {
                    Num(k) if k.is_zero() => Ok(Out::Next((**zero).clone())),
                    Num(k) => Ok(Out::Next(subst1(succ, var, &Num(k - BigUint::one())))),
                    Suc(pred) => Ok(Out::Next(subst1(succ, var, pred))),
                    Var(v) => Ok(Out::Blocked(v.clone())),
                    _ => stuck(e, StuckReason::NotANumeral),
                },
            },
            Fst(x) | Snd(x) => match self.step(x)? {
                Out::Next(x2) => Ok(Out::Next(if matches!(e, Fst(_)) { Fst(arc(x2)) } else { Snd(arc(x2)) })),
                Out::Blocked(v) => Ok(Out::Blocked(v)),
                Out::Value => match &**x {
                    Pair(l, r) => Ok(Out::Next(if matches!(e, Fst(_)) { (**l).clone() } else { (**r).clone() })),
                    Var(v) => Ok(Out::Blocked(v.clone())),
                    _ => stuck(e, StuckReason::NotAPair),
                },
            },
            Let { bound, var, body } => match self.step(bound)? {
                Out::Next(b2) => Ok(Out::Next(Let { bound: arc(b2), var: var.clone(), body: body.clone() })),
                Out::Blocked(v) => Ok(Out::Blocked(v)),
                Out::Value => Ok(Out::Next(subst1(body, var, bound))),
            },
            Cff1 { func, arg } | Op { func, arg } => {
                let guarded = matches!(e, Op { .. });
                match self.step(arg)? {
                    Out::Next(a2) => Ok(Out::Next(if guarded {
                        Op { func: func.clone(), arg: arc(a2) }
                    } else {
                        Cff1 { func: func.clone(), arg: arc(a2) }
                    })),
                    Out::Blocked(v) => Ok(Out::Blocked(v)),
                    Out::Value => {
                        let m = match numeral(arg) {
                            Ok(m) => m,
                            Err(Some(v)) => return Ok(Out::Blocked(v)),
                            Err(None) => return stuck(e, StuckReason::NotANumeral),
                        };
                        if guarded && m >= self.word_size {
                            return stuck(e, StuckReason::WordGuard { operand: m.clone() });
                        }
                        match self.reg.apply1(func, m) {
                            Ok(k) => Ok(Out::Next(Num(k))),
                            Err(err) => stuck(e, StuckReason::Registry(err)),
                        }
                    }
                }
            }
            Cff2 { func, args } | Arith { func, args } => {
                let guarded = matches!(e, Arith { .. });
                match self.two(&args[0], &args[1])? {
                    Two::Next(l, r) => Ok(Out::Next(if guarded {
                        Arith { func: func.clone(), args: [l, r] }
                    } else {
                        Cff2 { func: func.clone(), args: [l, r] }
                    })),
                    Two::Blocked(v) => Ok(Out::Blocked(v)),
                    Two::Values => {
                        let mut ns = Vec::with_capacity(2);
                        for x in args.iter() {
                            match numeral(x) {
                                Ok(m) => ns.push(m),
                                Err(Some(v)) => return Ok(Out::Blocked(v)),
                                Err(None) => return stuck(e, StuckReason::NotANumeral),
                            }
                        }
                        if guarded {
                            if let Some(m) = ns.iter().find(|m| **m >= self.word_size) {
                                return stuck(e, StuckReason::WordGuard { operand: (*m).clone() });
                            }
                        }
                        match self.reg.apply2(func, ns[0], ns[1]) {
                            Ok(k) => Ok(Out::Next(Num(k))),
                            Err(err) => stuck(e, StuckReason::Registry(err)),
                        }
                    }
                }
            }
        }
    }

    fn beta_ap(&self, e: &Expr, f: &Expr, x: &Expr) -> Result<Out, StepError> {
        match f {
            Expr::Fun { fname, var, body } => {
                let mut m = std::collections::BTreeMap::new();
                m.insert(fname.clone(), f.clone());
                m.insert(var.clone(), x.clone());
                Ok(Out::Next(subst_map(body, &m)))
            }
            Expr::Var(v) => Ok(Out::Blocked(v.clone())),
            _ => stuck(e, StuckReason::NotAFunction),
        }
    }

    /// Steps a node with two evaluated children: left then right in
    /// sequential mode, both at once in parallel mode.
    fn two(&self, l: &Arc<Expr>, r: &Arc<Expr>) -> Result<Two, StepError> {
        match self.mode {
            Mode::Seq => match self.step(l)? {
                Out::Next(l2) => Ok(Two::Next(arc(l2), r.clone())),
                Out::Blocked(v) => Ok(Two::Blocked(v)),
                Out::Value => match self.step(r)? {
                    Out::Next(r2) => Ok(Two::Next(l.clone(), arc(r2))),
                    Out::Blocked(v) => Ok(Two::Blocked(v)),
                    Out::Value => Ok(Two::Values),
                },
            },
            Mode::Par => {
                let sl = self.step(l)?;
                let sr = self.step(r)?;
                match (sl, sr) {
                    (Out::Blocked(v), _) | (_, Out::Blocked(v)) => Ok(Two::Blocked(v)),
                    (Out::Value, Out::Value) => Ok(Two::Values),
                    (sl, sr) => {
                        let l2 = match sl {
                            Out::Next(x) => arc(x),
                            _ => l.clone(),
                        };
                        let r2 = match sr {
                            Out::Next(x) => arc(x),
                            _ => r.clone(),
                        };
                        Ok(Two::Next(l2, r2))
                    }
                }
            }
        }
    }
}

enum Two {
    Next(Arc<Expr>, Arc<Expr>),
    Values,
    Blocked(Name),
}
