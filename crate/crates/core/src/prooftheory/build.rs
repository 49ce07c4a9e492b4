//! Deterministic constructors for derivation nodes.
//!
//! The `nat_member`, `type_member` and `infer` helpers produce routine
//! well-formedness and membership subderivations by recursion on the
//! syntax of the subject. They do no search: an unsupported subject is
//! a programming error and panics.

use num_bigint::BigUint;

use crate::eval::symbolic_run;
use crate::judgment::{Form, Judgment};
use crate::registry::{EvalConfig, Registry};
use crate::syntax::{fresh_name, subst1, Expr, Name, Telescope};

use super::{Derivation, Payload, RuleTag, Side};

type D = Derivation;

pub struct Builder {
    pub registry: Registry,
    pub config: EvalConfig,
}

fn form(d: &D) -> &Form {
    &d.conclusion.form
}

fn ctx(d: &D) -> &Telescope {
    &d.conclusion.ctx
}

/// Subject, subject and type of a membership-like conclusion.
fn mty(d: &D) -> (&Expr, &Expr, &Expr) {
    match form(d) {
        Form::Member { lhs, rhs, ty } | Form::Value { lhs, rhs, ty } | Form::Cost { lhs, rhs, ty, .. } => {
            (lhs, rhs, ty)
        }
        Form::TypeEq { .. } => panic!("expected a membership, found {}", d.conclusion),
    }
}

fn cost_of(d: &D) -> &Expr {
    match form(d) {
        Form::Cost { cost, .. } => cost,
        _ => panic!("expected a cost judgment, found {}", d.conclusion),
    }
}

fn with_ty(f: &Form, ty: Expr) -> Form {
    match f.clone() {
        Form::Member { lhs, rhs, .. } => Form::Member { lhs, rhs, ty },
        Form::Value { lhs, rhs, .. } => Form::Value { lhs, rhs, ty },
        Form::Cost { lhs, rhs, cost, .. } => Form::Cost { lhs, rhs, ty, cost },
        Form::TypeEq { .. } => panic!("type equalities have no type"),
    }
}

pub(crate) fn extend(c: &Telescope, x: &str, a: Expr) -> Telescope {
    Judgment::extend(c, x, a)
}

impl Builder {
    pub fn new(registry: Registry, config: EvalConfig) -> Self {
        Builder { registry, config }
    }

    pub fn word(&self) -> Expr {
        Expr::Num(self.config.word_size.clone())
    }

    pub fn node(&self, rule: RuleTag, c: &Telescope, f: Form, premises: Vec<D>) -> D {
        Derivation::new(rule, Judgment::new(c.clone(), f), premises)
    }

    /// A name like `base` that `c` does not bind.
    pub fn fresh(&self, c: &Telescope, base: &str) -> Name {
        fresh_name(base, |s| c.iter().any(|(x, _)| &**x == s))
    }

    /// Renames a binder when it would clash with the context.
    pub fn open(&self, c: &Telescope, x: &Name, body: &Expr) -> (Name, Expr) {
        if c.iter().any(|(y, _)| y == x) {
            let y = self.fresh(c, x);
            let b = subst1(body, x, &Expr::Var(y.clone()));
            (y, b)
        } else {
            (x.clone(), body.clone())
        }
    }

    pub fn hyp(&self, c: &Telescope, x: &str) -> D {
        let a = c.iter().find(|(y, _)| &**y == x).map(|(_, a)| a.clone()).unwrap_or_else(|| panic!("`{x}` unbound"));
        let v = Expr::var(x);
        self.node(RuleTag::Hyp, c, Form::Cost { lhs: v.clone(), rhs: v, ty: a, cost: Expr::num(0) }, vec![])
    }

    pub fn to_value(&self, d: D) -> D {
        if matches!(form(&d), Form::Value { .. }) {
            return d;
        }
        let (l, r, t) = mty(&d);
        let f = Form::Value { lhs: l.clone(), rhs: r.clone(), ty: t.clone() };
        self.node(RuleTag::Conversion, &ctx(&d).clone(), f, vec![d])
    }

    pub fn to_member(&self, d: D) -> D {
        if matches!(form(&d), Form::Member { .. }) {
            return d;
        }
        let (l, r, t) = mty(&d);
        let f = Form::Member { lhs: l.clone(), rhs: r.clone(), ty: t.clone() };
        self.node(RuleTag::Conversion, &ctx(&d).clone(), f, vec![d])
    }

    pub fn to_cost0(&self, d: D) -> D {
        let d = self.to_value(d);
        let (l, r, t) = mty(&d);
        let f = Form::Cost { lhs: l.clone(), rhs: r.clone(), ty: t.clone(), cost: Expr::num(0) };
        self.node(RuleTag::Conversion, &ctx(&d).clone(), f, vec![d])
    }

    /// `Γ ⊢ k = k ∈ nat`
    pub fn num(&self, c: &Telescope, k: &BigUint) -> D {
        let e = Expr::Num(k.clone());
        let rule = if *k == BigUint::ZERO { RuleTag::NatIZero } else { RuleTag::NatINum };
        self.node(rule, c, Form::Member { lhs: e.clone(), rhs: e, ty: Expr::Nat }, vec![])
    }

    /// Strips subset refinements off the type with SubsetE part 1.
    pub fn peel(&self, mut d: D) -> D {
        while let Expr::Subset { base, .. } = mty(&d).2 {
            let f = with_ty(form(&d), (**base).clone());
            d = self.node(RuleTag::SubsetE, &ctx(&d).clone(), f, vec![d]).with_payload(Payload::part(1));
        }
        d
    }

    /// `Γ ⊢ V = V ∈₀ nat` for a variable, numeral or successor.
    pub fn nat_value(&self, c: &Telescope, v: &Expr) -> D {
        match v {
            Expr::Var(x) => {
                let d = self.peel(self.hyp(c, x));
                assert_eq!(mty(&d).2, &Expr::Nat, "`{x}` is not a natural");
                self.to_value(d)
            }
            Expr::Num(k) => self.to_value(self.num(c, k)),
            Expr::Suc(e) => self.to_value(self.nat_member(c, &Expr::Suc(e.clone()))),
            other => panic!("{other} is not a value"),
        }
    }

    /// `Γ ⊢ e = e ∈ nat`
    pub fn nat_member(&self, c: &Telescope, e: &Expr) -> D {
        let member = |lhs: Expr| Form::Member { lhs: lhs.clone(), rhs: lhs, ty: Expr::Nat };
        match e {
            Expr::Num(k) => self.num(c, k),
            Expr::Var(x) => {
                let d = self.peel(self.hyp(c, x));
                assert_eq!(mty(&d).2, &Expr::Nat, "`{x}` is not a natural");
                self.to_member(d)
            }
            Expr::Suc(m) => self.node(RuleTag::NatISuc, c, member(e.clone()), vec![self.nat_member(c, m)]),
            Expr::Cff1 { arg, .. } => self.node(RuleTag::FFE1, c, member(e.clone()), vec![self.nat_member(c, arg)]),
            Expr::Cff2 { args, .. } => self.node(
                RuleTag::FFE1,
                c,
                member(e.clone()),
                vec![self.nat_member(c, &args[0]), self.nat_member(c, &args[1])],
            ),
            Expr::Op { .. } | Expr::Arith { .. } => self.to_member(self.arith(c, e)),
            Expr::Fst(_) | Expr::Snd(_) => {
                let d = self.peel(self.proj(c, e));
                assert_eq!(mty(&d).2, &Expr::Nat, "{e} is not a natural");
                self.to_member(d)
            }
            Expr::Let { bound, var, body } => {
                let m = self.infer(c, bound);
                let a = mty(&m).2.clone();
                let (x, body) = self.open(c, var, body);
                let inner = self.nat_member(&extend(c, &x, a), &body);
                let s = self.seq2(m.clone(), inner);
                self.drop_let_type(m, s)
            }
            Expr::Ifz { scrut, zero, var, succ } => {
                let scrut_d = self.nat_member(c, scrut);
                let m = self.fresh(c, "m");
                let motive = self.node(
                    RuleTag::NatF,
                    &extend(c, &m, Expr::Nat),
                    Form::Value { lhs: Expr::Nat, rhs: Expr::Nat, ty: Expr::Univ(0) },
                    vec![],
                );
                let p = self.fresh(c, "p");
                let zc = extend(c, &p, Expr::eq(Expr::Nat, Expr::zero(), (**scrut).clone()));
                let zero_d = self.nat_member(&zc, zero);
                let (b, succ) = self.open(c, var, succ);
                let bc = extend(c, &b, Expr::Nat);
                let q = self.fresh(&bc, "q");
                let sc = extend(&bc, &q, Expr::eq(Expr::Nat, Expr::suc(Expr::Var(b.clone())), (**scrut).clone()));
                let succ_d = self.nat_member(&sc, &succ);
                let f = Form::Member {
                    lhs: Expr::ifz((**scrut).clone(), (**zero).clone(), &b, succ.clone()),
                    rhs: Expr::ifz((**scrut).clone(), (**zero).clone(), &b, succ),
                    ty: Expr::let_((**scrut).clone(), &m, Expr::Nat),
                };
                let d = self.node(RuleTag::NatE1, c, f, vec![motive, scrut_d.clone(), zero_d, succ_d]);
                self.drop_let_type(scrut_d, d)
            }
            other => panic!("no membership construction for {other}"),
        }
    }

    /// `Γ ⊢ op(f, V) ∈ nat [1]` or `Γ ⊢ arith(f, V, U) ∈ nat [1]`, with
    /// the word guards proved by instantiation.
    pub fn arith(&self, c: &Telescope, e: &Expr) -> D {
        let operands: Vec<&Expr> = match e {
            Expr::Op { arg, .. } => vec![arg],
            Expr::Arith { args, .. } => vec![&args[0], &args[1]],
            other => panic!("{other} is not guarded arithmetic"),
        };
        let mut ps: Vec<D> = operands.iter().map(|v| self.nat_value(c, v)).collect();
        for v in &operands {
            ps.push(self.inst(c, &Expr::rel2("<", (*v).clone(), self.word())));
        }
        let f = Form::Cost { lhs: e.clone(), rhs: e.clone(), ty: Expr::Nat, cost: Expr::num(1) };
        self.node(RuleTag::ArithE, c, f, ps)
    }

    /// `Γ ⊢ fst V ∈ A [1]` or `Γ ⊢ snd V ∈ B [1]` for a variable of
    /// (refined) sigma type. The second component's type is simplified
    /// when it does not depend on the first.
    pub fn proj(&self, c: &Telescope, e: &Expr) -> D {
        let (v, second) = match e {
            Expr::Fst(v) => (v, false),
            Expr::Snd(v) => (v, true),
            other => panic!("{other} is not a projection"),
        };
        let Expr::Var(x) = &**v else { panic!("projection from {v}, not a variable") };
        let vd = self.to_value(self.peel(self.hyp(c, x)));
        let Expr::Sigma { var, snd, .. } = mty(&vd).2.clone() else { panic!("`{x}` is not a pair") };
        let sigma_e = |part: u8| {
            let (l, _, t) = mty(&vd);
            let Expr::Sigma { var, fst, snd } = t else { unreachable!() };
            let f = if part == 1 {
                Form::Cost { lhs: Expr::fst(l.clone()), rhs: Expr::fst(l.clone()), ty: (**fst).clone(), cost: Expr::num(1) }
            } else {
                Form::Cost {
                    lhs: Expr::snd(l.clone()),
                    rhs: Expr::snd(l.clone()),
                    ty: Expr::let_(Expr::fst(l.clone()), var, (**snd).clone()),
                    cost: Expr::num(1),
                }
            };
            self.node(RuleTag::SigmaE, c, f, vec![vd.clone()]).with_payload(Payload::part(part))
        };
        if !second {
            return sigma_e(1);
        }
        let d = sigma_e(2);
        if snd.has_free(&var) {
            return d;
        }
        let first = self.to_member(sigma_e(1));
        self.drop_let_type(first, d)
    }

    /// A membership of `e` at whatever type its construction gives.
    pub fn infer(&self, c: &Telescope, e: &Expr) -> D {
        match e {
            Expr::Var(x) => self.to_member(self.hyp(c, x)),
            Expr::Fst(_) | Expr::Snd(_) => self.to_member(self.proj(c, e)),
            _ => self.nat_member(c, e),
        }
    }

    /// `Γ ⊢ T = T ∈ U_0`
    pub fn type_member(&self, c: &Telescope, t: &Expr) -> D {
        let u = Expr::Univ(0);
        let value = |t: &Expr| Form::Value { lhs: t.clone(), rhs: t.clone(), ty: u.clone() };
        match t {
            Expr::Nat => self.node(RuleTag::NatF, c, value(t), vec![]),
            Expr::Eq { ty, lhs, rhs } => {
                assert_eq!(**ty, Expr::Nat, "only equalities at nat are supported");
                let ps = vec![self.type_member(c, ty), self.nat_member(c, lhs), self.nat_member(c, rhs)];
                self.node(RuleTag::EqF, c, value(t), ps)
            }
            Expr::Rel2 { args, .. } => {
                let ps = args.iter().map(|a| self.nat_member(c, a)).collect();
                self.node(RuleTag::RelF, c, value(t), ps)
            }
            Expr::Rel3 { args, .. } => {
                let ps = args.iter().map(|a| self.nat_member(c, a)).collect();
                self.node(RuleTag::RelF, c, value(t), ps)
            }
            Expr::Subset { var, base: a, pred: b } | Expr::Sigma { var, fst: a, snd: b } => {
                let (x, b) = self.open(c, var, b);
                let ps = vec![self.type_member(c, a), self.type_member(&extend(c, &x, (**a).clone()), &b)];
                let rule = if matches!(t, Expr::Subset { .. }) { RuleTag::SubsetF } else { RuleTag::SigmaF };
                self.node(rule, c, value(t), ps)
            }
            Expr::Funtime { var, dom, cod, cost } => {
                let (x, cod) = self.open(c, var, cod);
                let cost = subst1(cost, var, &Expr::Var(x.clone()));
                let inner = extend(c, &x, (**dom).clone());
                let ps = vec![self.type_member(c, dom), self.type_member(&inner, &cod), self.nat_member(&inner, &cost)];
                self.node(RuleTag::FuntimeF, c, value(t), ps)
            }
            Expr::Let { bound, var, body } => {
                let m = self.infer(c, bound);
                let a = mty(&m).2.clone();
                let (x, body) = self.open(c, var, body);
                let inner = self.type_member(&extend(c, &x, a), &body);
                let s = self.seq2(m.clone(), inner);
                self.drop_let_type(m, s)
            }
            other => panic!("no type formation for {other}"),
        }
    }

    /// `Γ ⊢ T = T type`
    pub fn type_refl(&self, c: &Telescope, t: &Expr) -> D {
        let f = Form::TypeEq { lhs: t.clone(), rhs: t.clone() };
        let prem = if let Expr::Univ(i) = t {
            self.node(
                RuleTag::UnivF,
                c,
                Form::Value { lhs: t.clone(), rhs: t.clone(), ty: Expr::Univ(i + 1) },
                vec![],
            )
            .with_payload(Payload { level: Some(*i), ..Payload::default() })
        } else {
            self.type_member(c, t)
        };
        self.node(RuleTag::UnivE, c, f, vec![prem])
    }

    /// Seq part 2 from `M ∈ A` and `Γ, x:A ⊢ N ∈ B`.
    pub fn seq2(&self, m: D, body: D) -> D {
        let c = ctx(&m).clone();
        let (x, _) = ctx(&body).last().expect("extended context").clone();
        let (ml, mr, _) = mty(&m);
        let (nl, nr, b) = mty(&body);
        let f = Form::Member {
            lhs: Expr::let_(ml.clone(), &x, nl.clone()),
            rhs: Expr::let_(mr.clone(), &x, nr.clone()),
            ty: Expr::let_(ml.clone(), &x, b.clone()),
        };
        self.node(RuleTag::Seq, &c, f, vec![m, body]).with_payload(Payload::part(2))
    }

    /// Seq part 3 from `M ∈ A [P]` and `Γ, x:A ⊢ N ∈ B [Q]`.
    pub fn seq3(&self, m: D, body: D) -> D {
        let c = ctx(&m).clone();
        let (x, _) = ctx(&body).last().expect("extended context").clone();
        let (ml, mr, _) = mty(&m);
        let (nl, nr, b) = mty(&body);
        let f = Form::Cost {
            lhs: Expr::let_(ml.clone(), &x, nl.clone()),
            rhs: Expr::let_(mr.clone(), &x, nr.clone()),
            ty: Expr::let_(ml.clone(), &x, b.clone()),
            cost: Expr::plus(cost_of(&m).clone(), Expr::suc(Expr::let_(ml.clone(), &x, cost_of(&body).clone()))),
        };
        self.node(RuleTag::Seq, &c, f, vec![m, body]).with_payload(Payload::part(3))
    }

    /// Seq part 4: `let(M, x, B) = B' type` from `M ∈ A` and `B = B' type`,
    /// or the membership analogue.
    pub fn vacuous(&self, m: D, eq: D) -> D {
        let c = ctx(&eq).clone();
        let x = self.fresh(&c, "v");
        let ml = mty(&m).0.clone();
        let f = match form(&eq) {
            Form::TypeEq { lhs, rhs } => Form::TypeEq { lhs: Expr::let_(ml, &x, lhs.clone()), rhs: rhs.clone() },
            Form::Member { lhs, rhs, ty } => {
                Form::Member { lhs: Expr::let_(ml, &x, lhs.clone()), rhs: rhs.clone(), ty: ty.clone() }
            }
            other => panic!("Seq part 4 does not apply to {}", other.kind()),
        };
        self.node(RuleTag::Seq, &c, f, vec![m, eq]).with_payload(Payload::part(4))
    }

    pub fn resp(&self, eq: D, d: D) -> D {
        let Form::TypeEq { rhs, .. } = form(&eq).clone() else { panic!("RespEq needs a type equality") };
        let f = with_ty(form(&d), rhs);
        self.node(RuleTag::RespEq, &ctx(&d).clone(), f, vec![eq, d])
    }

    /// Rewrites a `let(M, x, B)` type to `B` when `x` is not used, given
    /// `m : M ∈ A`.
    pub fn drop_let_type(&self, m: D, d: D) -> D {
        let Expr::Let { body, .. } = mty(&d).2.clone() else { panic!("type is not a let") };
        let eq = self.vacuous(m, self.type_refl(&ctx(&d).clone(), &body));
        self.resp(eq, d)
    }

    /// The canonical candidate proof of a proof-irrelevant type.
    pub fn canonical(t: &Expr) -> Expr {
        match t {
            Expr::Sigma { fst, snd, .. } => Expr::pair(Self::canonical(fst), Self::canonical(snd)),
            Expr::Subset { base, .. } => Self::canonical(base),
            Expr::Let { body, .. } => Self::canonical(body),
            _ => Expr::Triv,
        }
    }

    /// `Γ ⊢ t ∈ T`, decided instance by instance.
    pub fn inst(&self, c: &Telescope, t: &Expr) -> D {
        let s = Self::canonical(t);
        self.node(RuleTag::Instantiate, c, Form::Member { lhs: s.clone(), rhs: s, ty: t.clone() }, vec![])
    }

    /// SubsetI for `M` at `subset(x, A, B)`, from its cost judgment at `A`.
    pub fn subset_intro(&self, d: D, sub: &Expr) -> D {
        let c = ctx(&d).clone();
        let Expr::Subset { var, base, pred } = sub else { panic!("{sub} is not a subset") };
        let (x, pred) = self.open(&c, var, pred);
        let (m, m2, _) = mty(&d);
        let (m, m2) = (m.clone(), m2.clone());
        let cost = cost_of(&d).clone();
        let ps = vec![
            self.type_member(&c, base),
            self.type_member(&extend(&c, &x, (**base).clone()), &pred),
            d,
            self.inst(&c, &Expr::let_(m.clone(), &x, pred.clone())),
        ];
        let f = Form::Cost { lhs: m, rhs: m2, ty: Expr::subset(&x, (**base).clone(), pred), cost };
        self.node(RuleTag::SubsetI, &c, f, ps)
    }

    /// CostWeaken to `to`, with `P ≤ to` decided by instantiation.
    pub fn weaken(&self, d: D, to: Expr) -> D {
        let c = ctx(&d).clone();
        let le = self.inst(&c, &Expr::rel2("≤", cost_of(&d).clone(), to.clone()));
        let (l, r, t) = mty(&d);
        let f = Form::Cost { lhs: l.clone(), rhs: r.clone(), ty: t.clone(), cost: to };
        self.node(RuleTag::CostWeaken, &c, f, vec![d, le])
    }

    /// CostReplace along `P = P' ∈ nat`.
    pub fn replace(&self, d: D, eq: D) -> D {
        let c = ctx(&d).clone();
        let (l, r, t) = mty(&d);
        let to = mty(&eq).1.clone();
        let f = Form::Cost { lhs: l.clone(), rhs: r.clone(), ty: t.clone(), cost: to };
        self.node(RuleTag::CostReplace, &c, f, vec![d, eq])
    }

    /// `Γ ⊢ A = A' type` by expanding `lhs` until it reaches `A'`.
    pub fn expand_to(&self, c: &Telescope, lhs: &Expr, target: &Expr) -> D {
        let run = symbolic_run(lhs, &self.registry, &self.config, self.config.mode, 64).expect("type steps");
        let k = run.iter().position(|e| e.alpha_eq(target)).unwrap_or_else(|| panic!("{lhs} does not reach {target}"));
        let refl = self.type_refl(c, target);
        let f = Form::TypeEq { lhs: lhs.clone(), rhs: target.clone() };
        self.node(RuleTag::OpenHeadExp, c, f, vec![refl]).with_payload(Payload {
            steps: Some(k as u64 + 1),
            side: Some(Side::Left),
            ..Payload::default()
        })
    }

    /// FuntimeE at `f` applied to `v`, with the argument premise given.
    pub fn apply(&self, c: &Telescope, f: &str, arg: D) -> D {
        let fd = self.to_value(self.hyp(c, f));
        let Expr::Funtime { var, cod, cost, .. } = mty(&fd).2.clone() else { panic!("`{f}` is not a function") };
        let v = mty(&arg).0.clone();
        let ap = Expr::ap(Expr::var(f), v.clone());
        let form = Form::Cost {
            lhs: ap.clone(),
            rhs: ap,
            ty: subst1(&cod, &var, &v),
            cost: Expr::suc(subst1(&cost, &var, &v)),
        };
        self.node(RuleTag::FuntimeE, c, form, vec![fd, self.to_value(arg)])
    }
}
