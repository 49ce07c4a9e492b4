use num_bigint::BigUint;

use crate::eval::{eval_numeral, NumeralError};
use crate::syntax::{print, subst1, Expr};

use super::den::TypeDen;
use super::{SemError, Semantics, Verdict, Witness};

impl Semantics {
    /// `M = M' ∈ A`: both sides evaluate to related values.
    pub fn member_eq(&self, m: &Expr, m2: &Expr, d: &TypeDen) -> Verdict {
        let (v, w) = match (self.run_verdict(m), self.run_verdict(m2)) {
            (Ok(a), Ok(b)) => (a.value, b.value),
            (Err(v), _) | (_, Err(v)) => return v,
        };
        self.value_rel(&v, &w, d)
    }

    /// `M = M' ∈ A [P]`: as `member_eq`, and both sides finish within
    /// the value of `P` steps in the configured mode.
    pub fn member_cost(&self, m: &Expr, m2: &Expr, d: &TypeDen, p: &Expr) -> Result<Verdict, SemError> {
        let bound = eval_numeral(p, &self.registry, &self.config).map_err(|e| SemError::Presupposition {
            cost: print(p),
            why: match e {
                NumeralError::Eval(e) => e.to_string(),
                NumeralError::NotANumeral(v) => format!("evaluates to {v}"),
            },
        })?;
        let (a, b) = match (self.run_verdict(m), self.run_verdict(m2)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(v), _) | (_, Err(v)) => return Ok(v),
        };
        let over = [(m, a.steps), (m2, b.steps)].into_iter().find(|(_, c)| BigUint::from(*c) > bound);
        let cost = match over {
            Some((t, c)) => Verdict::fails(Witness::about(format!("takes {c} steps, over the bound {bound}"), t)),
            None => Verdict::holds(),
        };
        Ok(cost.and_then(|| self.value_rel(&a.value, &b.value, d)))
    }

    /// Relates two values at a type denotation.
    pub fn value_rel(&self, v: &Expr, w: &Expr, d: &TypeDen) -> Verdict {
        let differ = |why: &str| Verdict::fails(Witness::about(format!("{why} ({v} vs {w})"), v));
        match d {
            TypeDen::Nat => match (v.as_numeral(), w.as_numeral()) {
                (Some(a), Some(b)) if a == b => Verdict::holds(),
                (Some(_), Some(_)) => differ("different numerals"),
                _ => differ("not a numeral"),
            },
            TypeDen::Eq { ty, lhs, rhs } => {
                if *v != Expr::Triv || *w != Expr::Triv {
                    return differ("equality proofs are triv");
                }
                let r = self.value_rel(lhs, rhs, ty);
                match r.witness() {
                    Some(wit) => Verdict::fails(Witness::about(
                        format!("{lhs} and {rhs} are not equal: {}", wit.message),
                        lhs,
                    )),
                    None => r,
                }
            }
            TypeDen::Rel { rel, args, holds } => {
                if *v != Expr::Triv || *w != Expr::Triv {
                    return differ("relation proofs are triv");
                }
                Verdict::from_bool(*holds, || Witness::new(format!("{rel}({}) is false", join(args))))
            }
            TypeDen::Subset { base, var, pred } => {
                self.value_rel(v, w, base).and_then(|| self.inhabited_at(&subst1(pred, var, v)))
            }
            TypeDen::Sigma { fst, var, snd } => match (v, w) {
                (Expr::Pair(a, b), Expr::Pair(c, e)) => self.value_rel(a, c, fst).and_then(|| {
                    match self.type_denote(&subst1(snd, var, a)) {
                        Ok(d2) => self.value_rel(b, e, &d2),
                        Err(err) => err.verdict(),
                    }
                }),
                _ => differ("not a pair"),
            },
            TypeDen::Funtime { dom, var, cod, cost } => {
                if !matches!(v, Expr::Fun { .. }) || !matches!(w, Expr::Fun { .. }) {
                    return differ("not a function");
                }
                self.forall(dom, &format!("{v}|{w}"), |u| {
                    let c = match self.type_denote(&subst1(cod, var, u)) {
                        Ok(c) => c,
                        Err(e) => return e.verdict(),
                    };
                    let p = Expr::suc(subst1(cost, var, u));
                    let (l, r) = (Expr::ap(v.clone(), u.clone()), Expr::ap(w.clone(), u.clone()));
                    match self.member_cost(&l, &r, &c, &p) {
                        Ok(verdict) => verdict,
                        Err(e) => Verdict::fails(Witness::about(e.to_string(), &p)),
                    }
                })
            }
            TypeDen::Pi { dom, var, cod } => {
                if !matches!(v, Expr::Fun { .. }) || !matches!(w, Expr::Fun { .. }) {
                    return differ("not a function");
                }
                self.forall(dom, &format!("{v}|{w}"), |u| match self.type_denote(&subst1(cod, var, u)) {
                    Ok(c) => self.member_eq(&Expr::ap(v.clone(), u.clone()), &Expr::ap(w.clone(), u.clone()), &c),
                    Err(e) => e.verdict(),
                })
            }
            TypeDen::Univ(i) => self.type_eq_at(v, w, *i),
        }
    }

    /// `A = A' type`
    pub fn type_eq(&self, a: &Expr, b: &Expr) -> Verdict {
        self.type_eq_at(a, b, self.budget.max_level)
    }

    fn type_eq_at(&self, a: &Expr, b: &Expr, cap: u32) -> Verdict {
        match (self.denote_at(a, cap), self.denote_at(b, cap)) {
            (Ok(d1), Ok(d2)) => self.den_eq(&d1, &d2),
            (Err(e), _) | (_, Err(e)) => e.verdict(),
        }
    }

    /// Equality of two denotations, sampling the dependent parts.
    pub fn den_eq(&self, d1: &TypeDen, d2: &TypeDen) -> Verdict {
        use TypeDen::*;
        let fam = |base: &TypeDen, x1: &str, b1: &Expr, x2: &str, b2: &Expr| {
            self.forall(base, &format!("{b1}|{b2}"), |u| self.type_eq(&subst1(b1, x1, u), &subst1(b2, x2, u)))
        };
        match (d1, d2) {
            (Nat, Nat) => Verdict::holds(),
            (Univ(i), Univ(j)) => {
                Verdict::from_bool(i == j, || Witness::new(format!("universe levels {i} and {j} differ")))
            }
            (Eq { ty: t1, lhs: l1, rhs: r1 }, Eq { ty: t2, lhs: l2, rhs: r2 }) => self
                .den_eq(t1, t2)
                .and_then(|| self.value_rel(l1, l2, t1))
                .and_then(|| self.value_rel(r1, r2, t1)),
            (Rel { rel: a, args: x, .. }, Rel { rel: b, args: y, .. }) => Verdict::from_bool(a == b && x == y, || {
                Witness::new(format!("relations {a}({}) and {b}({}) differ", join(x), join(y)))
            }),
            (Subset { base: b1, var: x1, pred: p1 }, Subset { base: b2, var: x2, pred: p2 }) => {
                self.den_eq(b1, b2).and_then(|| fam(b1, x1, p1, x2, p2))
            }
            (Sigma { fst: b1, var: x1, snd: p1 }, Sigma { fst: b2, var: x2, snd: p2 }) => {
                self.den_eq(b1, b2).and_then(|| fam(b1, x1, p1, x2, p2))
            }
            (Pi { dom: b1, var: x1, cod: p1 }, Pi { dom: b2, var: x2, cod: p2 }) => {
                self.den_eq(b1, b2).and_then(|| fam(b1, x1, p1, x2, p2))
            }
            (
                Funtime { dom: b1, var: x1, cod: c1, cost: p1 },
                Funtime { dom: b2, var: x2, cod: c2, cost: p2 },
            ) => self.den_eq(b1, b2).and_then(|| {
                self.forall(b1, &format!("{c1}|{c2}|{p1}|{p2}"), |u| {
                    self.type_eq(&subst1(c1, x1, u), &subst1(c2, x2, u)).and_then(|| {
                        self.member_eq(&subst1(p1, x1, u), &subst1(p2, x2, u), &TypeDen::Nat)
                    })
                })
            }),
            _ => Verdict::fail(format!("type formers {} and {} differ", d1.former(), d2.former())),
        }
    }

    /// Whether a closed type expression has a member.
    pub fn inhabited_at(&self, a: &Expr) -> Verdict {
        match self.type_denote(a) {
            Ok(d) => self.inhabited(&d),
            Err(e) => e.verdict(),
        }
    }

    /// Decided for equalities and relations over numerals and for
    /// sigma and subset types built from them; searched by sampling
    /// otherwise, where a miss is only an unknown.
    pub fn inhabited(&self, d: &TypeDen) -> Verdict {
        use TypeDen::*;
        match d {
            Nat | Univ(_) => Verdict::holds(),
            Eq { .. } | Rel { .. } => self.value_rel(&Expr::Triv, &Expr::Triv, d),
            Subset { base, var, pred } | Sigma { fst: base, var, snd: pred } => self.exists(base, var, pred),
            Funtime { .. } | Pi { .. } => Verdict::unknown(format!("inhabitation of {} types is not decided", d.former())),
        }
    }

    /// `∃V ∈ base. [V/x]family` is inhabited.
    fn exists(&self, base: &TypeDen, x: &str, family: &Expr) -> Verdict {
        if let Some(t) = self.singleton(base) {
            return self.value_rel(&t, &t, base).and_then(|| self.inhabited_at(&subst1(family, x, &t)));
        }
        let tag = format!("exists|{family}");
        let candidates = match self.sample_values(base, self.budget.inner_samples, &tag, &[]) {
            Ok(c) => c,
            Err(e) => return Verdict::unknown(e.to_string()),
        };
        let n = candidates.len() as u64;
        for c in &candidates {
            let v = self.inhabited_at(&subst1(family, x, c));
            if v.is_holds() {
                return v;
            }
        }
        Verdict::unknown(format!("no inhabitant among {n} sampled candidates")).with_tested(n)
    }

    /// The unique candidate member of a type built from proof-irrelevant
    /// parts, when there is one.
    pub(crate) fn singleton(&self, d: &TypeDen) -> Option<Expr> {
        match d {
            TypeDen::Eq { .. } | TypeDen::Rel { .. } => Some(Expr::Triv),
            TypeDen::Subset { base, .. } => self.singleton(base),
            TypeDen::Sigma { fst, var, snd } => {
                let a = self.singleton(fst)?;
                let d2 = self.type_denote(&subst1(snd, var, &a)).ok()?;
                Some(Expr::pair(a, self.singleton(&d2)?))
            }
            _ => None,
        }
    }

    /// Checks `f` at sampled members of `dom`. Unsamplable domains and
    /// empty samples give an unknown.
    pub(crate) fn forall(&self, dom: &TypeDen, tag: &str, f: impl Fn(&Expr) -> Verdict) -> Verdict {
        let us = match self.sample_values(dom, self.budget.inner_samples, tag, &[]) {
            Ok(us) => us,
            Err(e) => return Verdict::unknown(e.to_string()),
        };
        if us.is_empty() {
            return Verdict::unknown(format!("no members of the {} domain were found", dom.former()));
        }
        let n = us.len() as u64;
        let mut out = Verdict::holds();
        for u in &us {
            out = out.and_then(|| f(u).at_instance_value(u));
            if out.is_fails() {
                break;
            }
        }
        let tested = out.tested + n;
        out.with_tested(tested)
    }
}

impl Verdict {
    fn at_instance_value(mut self, u: &Expr) -> Self {
        if let super::Outcome::Fails { witness } = &mut self.outcome {
            if witness.instance.is_empty() {
                witness.instance = vec![("argument".to_string(), print(u))];
            }
        }
        self
    }
}

fn join(args: &[BigUint]) -> String {
    args.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(", ")
}
