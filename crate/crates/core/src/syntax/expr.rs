use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Variable and registry names.
pub type Name = Arc<str>;

pub fn name(s: &str) -> Name {
    Name::from(s)
}

/// Terms and types share one grammar.
///
/// `Suc` never wraps a `Num`: `Expr::suc` folds a successor of a numeral
/// into the next numeral, so every closed numeral value is a `Num`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Expr {
    Var(Name),
    Funtime {
        var: Name,
        dom: Arc<Expr>,
        cod: Arc<Expr>,
        cost: Arc<Expr>,
    },
    Pi {
        var: Name,
        dom: Arc<Expr>,
        cod: Arc<Expr>,
    },
    Fun {
        fname: Name,
        var: Name,
        body: Arc<Expr>,
    },
    Ap(Arc<Expr>, Arc<Expr>),
    Nat,
    Num(BigUint),
    Suc(Arc<Expr>),
    Ifz {
        scrut: Arc<Expr>,
        zero: Arc<Expr>,
        var: Name,
        succ: Arc<Expr>,
    },
    Sigma {
        var: Name,
        fst: Arc<Expr>,
        snd: Arc<Expr>,
    },
    Pair(Arc<Expr>, Arc<Expr>),
    Fst(Arc<Expr>),
    Snd(Arc<Expr>),
    Eq {
        ty: Arc<Expr>,
        lhs: Arc<Expr>,
        rhs: Arc<Expr>,
    },
    Triv,
    Subset {
        var: Name,
        base: Arc<Expr>,
        pred: Arc<Expr>,
    },
    Let {
        bound: Arc<Expr>,
        var: Name,
        body: Arc<Expr>,
    },
    Univ(u32),
    Rel2 {
        rel: Name,
        args: [Arc<Expr>; 2],
    },
    Rel3 {
        rel: Name,
        args: [Arc<Expr>; 3],
    },
    Cff1 {
        func: Name,
        arg: Arc<Expr>,
    },
    Cff2 {
        func: Name,
        args: [Arc<Expr>; 2],
    },
    Op {
        func: Name,
        arg: Arc<Expr>,
    },
    Arith {
        func: Name,
        args: [Arc<Expr>; 2],
    },
}

fn a(e: Expr) -> Arc<Expr> {
    Arc::new(e)
}

impl Expr {
    pub fn var(x: &str) -> Expr {
        Expr::Var(name(x))
    }

    pub fn num(k: u64) -> Expr {
        Expr::Num(BigUint::from(k))
    }

    pub fn zero() -> Expr {
        Expr::Num(BigUint::zero())
    }

    pub fn suc(e: Expr) -> Expr {
        match e {
            Expr::Num(k) => Expr::Num(k + BigUint::one()),
            other => Expr::Suc(a(other)),
        }
    }

    pub fn funtime(x: &str, dom: Expr, cod: Expr, cost: Expr) -> Expr {
        Expr::Funtime { var: name(x), dom: a(dom), cod: a(cod), cost: a(cost) }
    }

    pub fn pi(x: &str, dom: Expr, cod: Expr) -> Expr {
        Expr::Pi { var: name(x), dom: a(dom), cod: a(cod) }
    }

    pub fn fun(f: &str, x: &str, body: Expr) -> Expr {
        Expr::Fun { fname: name(f), var: name(x), body: a(body) }
    }

    pub fn ap(f: Expr, x: Expr) -> Expr {
        Expr::Ap(a(f), a(x))
    }

    pub fn ifz(scrut: Expr, zero: Expr, x: &str, succ: Expr) -> Expr {
        Expr::Ifz { scrut: a(scrut), zero: a(zero), var: name(x), succ: a(succ) }
    }

    pub fn sigma(x: &str, fst: Expr, snd: Expr) -> Expr {
        Expr::Sigma { var: name(x), fst: a(fst), snd: a(snd) }
    }

    pub fn pair(l: Expr, r: Expr) -> Expr {
        Expr::Pair(a(l), a(r))
    }

    pub fn fst(e: Expr) -> Expr {
        Expr::Fst(a(e))
    }

    pub fn snd(e: Expr) -> Expr {
        Expr::Snd(a(e))
    }

    pub fn eq(ty: Expr, lhs: Expr, rhs: Expr) -> Expr {
        Expr::Eq { ty: a(ty), lhs: a(lhs), rhs: a(rhs) }
    }

    pub fn subset(x: &str, base: Expr, pred: Expr) -> Expr {
        Expr::Subset { var: name(x), base: a(base), pred: a(pred) }
    }

    pub fn let_(bound: Expr, x: &str, body: Expr) -> Expr {
        Expr::Let { bound: a(bound), var: name(x), body: a(body) }
    }

    pub fn rel2(r: &str, l: Expr, rr: Expr) -> Expr {
        Expr::Rel2 { rel: name(r), args: [a(l), a(rr)] }
    }

    pub fn rel3(r: &str, x: Expr, y: Expr, z: Expr) -> Expr {
        Expr::Rel3 { rel: name(r), args: [a(x), a(y), a(z)] }
    }

    pub fn cff1(f: &str, e: Expr) -> Expr {
        Expr::Cff1 { func: name(f), arg: a(e) }
    }

    pub fn cff2(f: &str, l: Expr, r: Expr) -> Expr {
        Expr::Cff2 { func: name(f), args: [a(l), a(r)] }
    }

    pub fn op(f: &str, e: Expr) -> Expr {
        Expr::Op { func: name(f), arg: a(e) }
    }

    pub fn arith(f: &str, l: Expr, r: Expr) -> Expr {
        Expr::Arith { func: name(f), args: [a(l), a(r)] }
    }

    /// `l +̂ r`
    pub fn plus(l: Expr, r: Expr) -> Expr {
        Expr::cff2("+", l, r)
    }

    /// `l ×̂ r`
    pub fn times(l: Expr, r: Expr) -> Expr {
        Expr::cff2("×", l, r)
    }

    pub fn max(l: Expr, r: Expr) -> Expr {
        Expr::cff2("max", l, r)
    }

    pub fn as_numeral(&self) -> Option<&BigUint> {
        match self {
            Expr::Num(k) => Some(k),
            _ => None,
        }
    }

    pub fn as_u64(&self) -> Option<u64> {
        self.as_numeral().and_then(|k| k.to_u64())
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Expr::Var(_))
    }

    /// Final forms of the operational semantics, with free variables
    /// counting as values.
    pub fn is_value(&self) -> bool {
        match self {
            Expr::Var(_)
            | Expr::Funtime { .. }
            | Expr::Pi { .. }
            | Expr::Fun { .. }
            | Expr::Nat
            | Expr::Num(_)
            | Expr::Sigma { .. }
            | Expr::Eq { .. }
            | Expr::Triv
            | Expr::Subset { .. }
            | Expr::Univ(_)
            | Expr::Rel2 { .. }
            | Expr::Rel3 { .. } => true,
            Expr::Suc(e) => e.is_value(),
            Expr::Pair(l, r) => l.is_value() && r.is_value(),
            _ => false,
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn free_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        collect_free(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn has_free(&self, x: &str) -> bool {
        occurs_free(self, x)
    }

    /// Immediate subterms together with the names bound over each.
    pub fn children(&self) -> Vec<(Vec<&Name>, &Expr)> {
        match self {
            Expr::Var(_) | Expr::Nat | Expr::Num(_) | Expr::Triv | Expr::Univ(_) => vec![],
            Expr::Funtime { var, dom, cod, cost } => {
                vec![(vec![], dom), (vec![var], cod), (vec![var], cost)]
            }
            Expr::Pi { var, dom, cod } => vec![(vec![], dom), (vec![var], cod)],
            Expr::Fun { fname, var, body } => vec![(vec![fname, var], body)],
            Expr::Ap(l, r) | Expr::Pair(l, r) => vec![(vec![], l), (vec![], r)],
            Expr::Suc(e) | Expr::Fst(e) | Expr::Snd(e) => vec![(vec![], e)],
            Expr::Ifz { scrut, zero, var, succ } => {
                vec![(vec![], scrut), (vec![], zero), (vec![var], succ)]
            }
            Expr::Sigma { var, fst, snd } => vec![(vec![], fst), (vec![var], snd)],
            Expr::Eq { ty, lhs, rhs } => vec![(vec![], ty), (vec![], lhs), (vec![], rhs)],
            Expr::Subset { var, base, pred } => vec![(vec![], base), (vec![var], pred)],
            Expr::Let { bound, var, body } => vec![(vec![], bound), (vec![var], body)],
            Expr::Rel2 { args, .. } | Expr::Cff2 { args, .. } | Expr::Arith { args, .. } => {
                args.iter().map(|x| (vec![], &**x)).collect()
            }
            Expr::Rel3 { args, .. } => args.iter().map(|x| (vec![], &**x)).collect(),
            Expr::Cff1 { arg, .. } | Expr::Op { arg, .. } => vec![(vec![], arg)],
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|(_, c)| c.size()).sum::<usize>()
    }

    /// Syntactic equality up to renaming of bound variables.
    pub fn alpha_eq(&self, other: &Expr) -> bool {
        alpha(self, other, &mut Vec::new())
    }
}

fn collect_free<'a>(e: &'a Expr, bound: &mut Vec<&'a Name>, out: &mut BTreeSet<Name>) {
    if let Expr::Var(x) = e {
        if !bound.contains(&x) {
            out.insert(x.clone());
        }
        return;
    }
    for (binders, child) in e.children() {
        let depth = bound.len();
        bound.extend(binders);
        collect_free(child, bound, out);
        bound.truncate(depth);
    }
}

fn occurs_free(e: &Expr, x: &str) -> bool {
    if let Expr::Var(y) = e {
        return &**y == x;
    }
    e.children()
        .into_iter()
        .any(|(binders, child)| !binders.iter().any(|b| &***b == x) && occurs_free(child, x))
}

fn lookup(env: &[(Name, Name)], x: &Name, y: &Name) -> bool {
    for (l, r) in env.iter().rev() {
        if l == x || r == y {
            return l == x && r == y;
        }
    }
    x == y
}

fn alpha(l: &Expr, r: &Expr, env: &mut Vec<(Name, Name)>) -> bool {
    use Expr::*;
    match (l, r) {
        (Var(x), Var(y)) => lookup(env, x, y),
        (Num(m), Num(n)) => m == n,
        (Univ(i), Univ(j)) => i == j,
        (Nat, Nat) | (Triv, Triv) => true,
        (Rel2 { rel: p, .. }, Rel2 { rel: q, .. })
        | (Rel3 { rel: p, .. }, Rel3 { rel: q, .. })
        | (Cff1 { func: p, .. }, Cff1 { func: q, .. })
        | (Cff2 { func: p, .. }, Cff2 { func: q, .. })
        | (Op { func: p, .. }, Op { func: q, .. })
        | (Arith { func: p, .. }, Arith { func: q, .. })
            if p != q =>
        {
            false
        }
        _ if std::mem::discriminant(l) == std::mem::discriminant(r) => {
            let lc = l.children();
            let rc = r.children();
            lc.len() == rc.len()
                && lc.iter().zip(rc.iter()).all(|((lb, le), (rb, re))| {
                    let depth = env.len();
                    env.extend(lb.iter().zip(rb.iter()).map(|(x, y)| ((*x).clone(), (*y).clone())));
                    let ok = alpha(le, re, env);
                    env.truncate(depth);
                    ok
                })
        }
        _ => false,
    }
}

/// Picks `base`, or `base` followed by a counter, avoiding `taken`.
pub fn fresh_name(base: &str, taken: impl Fn(&str) -> bool) -> Name {
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
    let stem = if stem.is_empty() { "v" } else { stem };
    if !taken(base) {
        return name(base);
    }
    (1u64..)
        .map(|i| format!("{stem}{i}"))
        .find(|cand| !taken(cand))
        .map(|s| name(&s))
        .expect("unbounded counter")
}
