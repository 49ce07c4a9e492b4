use std::sync::Arc;

use num_bigint::BigUint;
use thiserror::Error;

use crate::eval::{eval_numeral, EvalError, NumeralError};
use crate::registry::{Kind, Mode, RegistryError};
use crate::syntax::{print, Expr, Name};

use super::{eval_verdict, Outcome, Semantics, Verdict};

/// The denotation of a closed type value. Dependent parts stay as open
/// expressions in the bound variable and are denoted per value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TypeDen {
    Nat,
    /// Both sides are evaluated members of `ty`.
    Eq { ty: Arc<TypeDen>, lhs: Expr, rhs: Expr },
    /// A registered relation at evaluated numerals.
    Rel { rel: Name, args: Vec<BigUint>, holds: bool },
    Subset { base: Arc<TypeDen>, var: Name, pred: Expr },
    Sigma { fst: Arc<TypeDen>, var: Name, snd: Expr },
    Funtime { dom: Arc<TypeDen>, var: Name, cod: Expr, cost: Expr },
    Pi { dom: Arc<TypeDen>, var: Name, cod: Expr },
    Univ(u32),
}

impl TypeDen {
    /// Types whose only possible member is `triv`.
    pub fn is_trivial(&self) -> bool {
        matches!(self, TypeDen::Eq { .. } | TypeDen::Rel { .. })
    }

    pub fn former(&self) -> &'static str {
        match self {
            TypeDen::Nat => "nat",
            TypeDen::Eq { .. } => "eq",
            TypeDen::Rel { .. } => "rel",
            TypeDen::Subset { .. } => "subset",
            TypeDen::Sigma { .. } => "sigma",
            TypeDen::Funtime { .. } => "funtime",
            TypeDen::Pi { .. } => "pi",
            TypeDen::Univ(_) => "univ",
        }
    }

    /// Numerals mentioned anywhere inside, used as sampling hints.
    pub(crate) fn numerals(&self, out: &mut Vec<BigUint>) {
        match self {
            TypeDen::Nat | TypeDen::Univ(_) => {}
            TypeDen::Eq { ty, lhs, rhs } => {
                ty.numerals(out);
                expr_numerals(lhs, out);
                expr_numerals(rhs, out);
            }
            TypeDen::Rel { args, .. } => out.extend(args.iter().cloned()),
            TypeDen::Subset { base, pred, .. } => {
                base.numerals(out);
                expr_numerals(pred, out);
            }
            TypeDen::Sigma { fst, snd, .. } => {
                fst.numerals(out);
                expr_numerals(snd, out);
            }
            TypeDen::Funtime { dom, cod, .. } | TypeDen::Pi { dom, cod, .. } => {
                dom.numerals(out);
                expr_numerals(cod, out);
            }
        }
    }
}

pub(crate) fn expr_numerals(e: &Expr, out: &mut Vec<BigUint>) {
    if let Expr::Num(k) = e {
        out.push(k.clone());
    }
    for (_, c) in e.children() {
        expr_numerals(c, out);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DenoteError {
    #[error("{ty} is not a type: {why}")]
    NotAType { ty: String, why: String },
    #[error("type {ty} does not evaluate: {error}")]
    Stuck { ty: String, error: EvalError },
    #[error("fuel exhausted evaluating type {ty}")]
    Fuel { ty: String },
    #[error("universe level {level} is not below the limit {max}")]
    Level { level: u32, max: u32 },
    #[error("{0}")]
    Unregistered(RegistryError),
    #[error("undecided: {0}")]
    Undecided(String),
}

impl DenoteError {
    /// How a membership claim about a non-type reads.
    pub fn verdict(&self) -> Verdict {
        match self {
            DenoteError::Fuel { .. } | DenoteError::Level { .. } | DenoteError::Undecided(_) => {
                Verdict::unknown(self.to_string())
            }
            _ => Verdict::fail(self.to_string()),
        }
    }
}

fn not_a_type(ty: &Expr, why: impl Into<String>) -> DenoteError {
    DenoteError::NotAType { ty: print(ty), why: why.into() }
}

impl Semantics {
    /// Evaluates a closed type and reads off its denotation.
    pub fn type_denote(&self, a: &Expr) -> Result<TypeDen, DenoteError> {
        self.denote_at(a, self.budget.max_level)
    }

    /// Like [`Semantics::type_denote`], allowing universes below `cap`.
    pub fn denote_at(&self, a: &Expr, cap: u32) -> Result<TypeDen, DenoteError> {
        if let Some(x) = a.free_vars().into_iter().next() {
            return Err(not_a_type(a, format!("open in `{x}`")));
        }
        let v = match self.run(a, Mode::Seq) {
            Ok(r) => r.value,
            Err(error @ EvalError::Stuck { .. }) => return Err(DenoteError::Stuck { ty: print(a), error }),
            Err(EvalError::Fuel { .. }) => return Err(DenoteError::Fuel { ty: print(a) }),
        };
        let sub = |e: &Expr| self.denote_at(e, cap).map(Arc::new);
        match &v {
            Expr::Nat => Ok(TypeDen::Nat),
            Expr::Univ(i) => {
                if *i < cap {
                    Ok(TypeDen::Univ(*i))
                } else {
                    Err(DenoteError::Level { level: *i, max: cap })
                }
            }
            Expr::Eq { ty, lhs, rhs } => {
                let d = sub(ty)?;
                let mut sides = Vec::with_capacity(2);
                for m in [lhs, rhs] {
                    let r = match self.run(m, Mode::Seq) {
                        Ok(r) => r,
                        Err(err) => {
                            return Err(match eval_verdict(m, &err).outcome {
                                Outcome::Unknown { reason } => DenoteError::Undecided(reason),
                                _ => not_a_type(&v, format!("{m} does not evaluate: {err}")),
                            })
                        }
                    };
                    let check = self.value_rel(&r.value, &r.value, &d);
                    match check.outcome {
                        Outcome::Holds => sides.push(r.value),
                        Outcome::Fails { witness } => {
                            return Err(not_a_type(&v, format!("{m} is not a member: {}", witness.message)))
                        }
                        Outcome::Unknown { reason } => return Err(DenoteError::Undecided(reason)),
                    }
                }
                let rhs = sides.pop().expect("two sides");
                let lhs = sides.pop().expect("two sides");
                Ok(TypeDen::Eq { ty: d, lhs, rhs })
            }
            Expr::Rel2 { rel, args } => self.rel_den(&v, rel, Kind::Rel2, &args[..]),
            Expr::Rel3 { rel, args } => self.rel_den(&v, rel, Kind::Rel3, &args[..]),
            Expr::Subset { var, base, pred } => {
                Ok(TypeDen::Subset { base: sub(base)?, var: var.clone(), pred: (**pred).clone() })
            }
            Expr::Sigma { var, fst, snd } => {
                Ok(TypeDen::Sigma { fst: sub(fst)?, var: var.clone(), snd: (**snd).clone() })
            }
            Expr::Funtime { var, dom, cod, cost } => Ok(TypeDen::Funtime {
                dom: sub(dom)?,
                var: var.clone(),
                cod: (**cod).clone(),
                cost: (**cost).clone(),
            }),
            Expr::Pi { var, dom, cod } => {
                Ok(TypeDen::Pi { dom: sub(dom)?, var: var.clone(), cod: (**cod).clone() })
            }
            _ => Err(not_a_type(&v, "not a type former")),
        }
    }

    fn rel_den(
        &self,
        v: &Expr,
        rel: &Name,
        kind: Kind,
        args: &[Arc<Expr>],
    ) -> Result<TypeDen, DenoteError> {
        if !self.registry.contains(kind, rel) {
            return Err(DenoteError::Unregistered(RegistryError::Unregistered { kind, name: rel.to_string() }));
        }
        let mut ns = Vec::with_capacity(args.len());
        for a in args {
            match eval_numeral(a, &self.registry, &self.config) {
                Ok(k) => ns.push(k),
                Err(NumeralError::Eval(EvalError::Fuel { .. })) => return Err(DenoteError::Fuel { ty: print(v) }),
                Err(e) => return Err(not_a_type(v, format!("argument {a}: {e}"))),
            }
        }
        let holds = match kind {
            Kind::Rel2 => self.registry.holds2(rel, &ns[0], &ns[1]),
            _ => self.registry.holds3(rel, &ns[0], &ns[1], &ns[2]),
        }
        .map_err(DenoteError::Unregistered)?;
        Ok(TypeDen::Rel { rel: rel.clone(), args: ns, holds })
    }
}
