use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use thiserror::Error;

use super::expr::{fresh_name, Expr, Name};
use super::print::print;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("substitution image for `{var}` is not a value: {image}")]
pub struct NonValueImage {
    pub var: String,
    pub image: String,
}

/// A finite map from variables to values.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Binding(BTreeMap<Name, Expr>);

impl Binding {
    pub fn new() -> Self {
        Binding(BTreeMap::new())
    }

    pub fn single(x: &str, v: Expr) -> Result<Self, NonValueImage> {
        let mut b = Binding::new();
        b.insert(x, v)?;
        Ok(b)
    }

    pub fn insert(&mut self, x: &str, v: Expr) -> Result<(), NonValueImage> {
        if !v.is_value() {
            return Err(NonValueImage { var: x.to_string(), image: print(&v) });
        }
        self.0.insert(Name::from(x), v);
        Ok(())
    }

    pub fn get(&self, x: &str) -> Option<&Expr> {
        self.0.get(x)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Name, &Expr)> {
        self.0.iter()
    }

    pub fn union(&self, other: &Binding) -> Binding {
        let mut out = self.clone();
        for (k, v) in other.iter() {
            out.0.insert(k.clone(), v.clone());
        }
        out
    }
}

/// Simultaneous capture-avoiding substitution.
pub fn subst(e: &Expr, b: &Binding) -> Expr {
    subst_map(e, &b.0)
}

/// Substitutes one value for one variable.
pub fn subst1(e: &Expr, x: &str, v: &Expr) -> Expr {
    let mut m = BTreeMap::new();
    m.insert(Name::from(x), v.clone());
    subst_map(e, &m)
}

/// Substitution without the value check on images. Used for renaming
/// and by callers that substitute open expressions into types.
pub fn subst_map(e: &Expr, map: &BTreeMap<Name, Expr>) -> Expr {
    if map.is_empty() {
        return e.clone();
    }
    let mut fv = BTreeSet::new();
    for img in map.values() {
        fv.extend(img.free_vars());
    }
    go(e, map, &fv)
}

fn go(e: &Expr, map: &BTreeMap<Name, Expr>, fv: &BTreeSet<Name>) -> Expr {
    use Expr::*;
    let s = |c: &Arc<Expr>| Arc::new(go(c, map, fv));
    match e {
        Var(x) => map.get(x).cloned().unwrap_or_else(|| e.clone()),
        Nat | Num(_) | Triv | Univ(_) => e.clone(),
        Funtime { var, dom, cod, cost } => {
            let dom = s(dom);
            let (vs, bs) = under(&[var], &[cod, cost], map, fv);
            Funtime { var: vs[0].clone(), dom, cod: bs[0].clone(), cost: bs[1].clone() }
        }
        Pi { var, dom, cod } => {
            let dom = s(dom);
            let (vs, bs) = under(&[var], &[cod], map, fv);
            Pi { var: vs[0].clone(), dom, cod: bs[0].clone() }
        }
        Fun { fname, var, body } => {
            let (vs, bs) = under(&[fname, var], &[body], map, fv);
            Fun { fname: vs[0].clone(), var: vs[1].clone(), body: bs[0].clone() }
        }
        Ap(l, r) => Ap(s(l), s(r)),
        Suc(x) => Expr::suc(go(x, map, fv)),
        Ifz { scrut, zero, var, succ } => {
            let (scrut, zero) = (s(scrut), s(zero));
            let (vs, bs) = under(&[var], &[succ], map, fv);
            Ifz { scrut, zero, var: vs[0].clone(), succ: bs[0].clone() }
        }
        Sigma { var, fst, snd } => {
            let fst = s(fst);
            let (vs, bs) = under(&[var], &[snd], map, fv);
            Sigma { var: vs[0].clone(), fst, snd: bs[0].clone() }
        }
        Pair(l, r) => Pair(s(l), s(r)),
        Fst(x) => Fst(s(x)),
        Snd(x) => Snd(s(x)),
        Eq { ty, lhs, rhs } => Eq { ty: s(ty), lhs: s(lhs), rhs: s(rhs) },
        Subset { var, base, pred } => {
            let base = s(base);
            let (vs, bs) = under(&[var], &[pred], map, fv);
            Subset { var: vs[0].clone(), base, pred: bs[0].clone() }
        }
        Let { bound, var, body } => {
            let bound = s(bound);
            let (vs, bs) = under(&[var], &[body], map, fv);
            Let { bound, var: vs[0].clone(), body: bs[0].clone() }
        }
        Rel2 { rel, args } => Rel2 { rel: rel.clone(), args: [s(&args[0]), s(&args[1])] },
        Rel3 { rel, args } => {
            Rel3 { rel: rel.clone(), args: [s(&args[0]), s(&args[1]), s(&args[2])] }
        }
        Cff1 { func, arg } => Cff1 { func: func.clone(), arg: s(arg) },
        Cff2 { func, args } => Cff2 { func: func.clone(), args: [s(&args[0]), s(&args[1])] },
        Op { func, arg } => Op { func: func.clone(), arg: s(arg) },
        Arith { func, args } => Arith { func: func.clone(), args: [s(&args[0]), s(&args[1])] },
    }
}

/// Pushes the substitution under a group of binders, renaming any binder
/// that would capture a free variable of an image.
fn under(
    binders: &[&Name],
    bodies: &[&Arc<Expr>],
    map: &BTreeMap<Name, Expr>,
    fv: &BTreeSet<Name>,
) -> (Vec<Name>, Vec<Arc<Expr>>) {
    let mut inner = map.clone();
    for b in binders {
        inner.remove(*b);
    }
    if inner.is_empty() {
        return (
            binders.iter().map(|b| (*b).clone()).collect(),
            bodies.iter().map(|b| (*b).clone()).collect(),
        );
    }
    let mut names = Vec::with_capacity(binders.len());
    let mut fv = fv.clone();
    let mut body_fv: Option<BTreeSet<Name>> = None;
    for (i, b) in binders.iter().enumerate() {
        let later_dup = binders[i + 1..].contains(b);
        if fv.contains(*b) && !later_dup {
            let bfv = body_fv.get_or_insert_with(|| {
                let mut s = BTreeSet::new();
                for body in bodies {
                    s.extend(body.free_vars());
                }
                s
            });
            let fresh = fresh_name(b, |c| {
                fv.contains(c)
                    || bfv.contains(c)
                    || inner.contains_key(c)
                    || binders.iter().any(|o| &***o == c)
                    || names.iter().any(|n: &Name| &**n == c)
            });
            inner.insert((*b).clone(), Expr::Var(fresh.clone()));
            fv.insert(fresh.clone());
            names.push(fresh);
        } else {
            names.push((*b).clone());
        }
    }
    let out = bodies.iter().map(|body| Arc::new(go(body, &inner, &fv))).collect();
    (names, out)
}

/// Renames every bound variable to a fresh `{name}_{tag}{i}`. The result
/// is alpha-equal to `e`.
pub fn rename_bound(e: &Expr, tag: &str) -> Expr {
    let mut counter = 0usize;
    rename(e, tag, &mut counter)
}

fn rename(e: &Expr, tag: &str, counter: &mut usize) -> Expr {
    use Expr::*;
    let r = |c: &Arc<Expr>, counter: &mut usize| Arc::new(rename(c, tag, counter));
    let fresh = |x: &Name, counter: &mut usize| {
        *counter += 1;
        let stem = x.trim_end_matches(|c: char| c.is_ascii_digit());
        Name::from(format!("{stem}_{tag}{counter}").as_str())
    };
    let bind = |xs: &[&Name], body: &Arc<Expr>, counter: &mut usize| -> (Vec<Name>, Arc<Expr>) {
        let mut map = BTreeMap::new();
        let mut names = Vec::new();
        for x in xs {
            let n = fresh(x, counter);
            map.insert((*x).clone(), Expr::Var(n.clone()));
            names.push(n);
        }
        let body = Arc::new(rename(&subst_map(body, &map), tag, counter));
        (names, body)
    };
    match e {
        Var(_) | Nat | Num(_) | Triv | Univ(_) => e.clone(),
        Funtime { var, dom, cod, cost } => {
            let dom = r(dom, counter);
            let n = fresh(var, counter);
            let m: BTreeMap<Name, Expr> = [(var.clone(), Expr::Var(n.clone()))].into_iter().collect();
            let cod = Arc::new(rename(&subst_map(cod, &m), tag, counter));
            let cost = Arc::new(rename(&subst_map(cost, &m), tag, counter));
            Funtime { var: n, dom, cod, cost }
        }
        Pi { var, dom, cod } => {
            let dom = r(dom, counter);
            let (v, cod) = bind(&[var], cod, counter);
            Pi { var: v[0].clone(), dom, cod }
        }
        Fun { fname, var, body } => {
            if fname == var {
                let (v, body) = bind(&[var], body, counter);
                let f = fresh(fname, counter);
                Fun { fname: f, var: v[0].clone(), body }
            } else {
                let (v, body) = bind(&[fname, var], body, counter);
                Fun { fname: v[0].clone(), var: v[1].clone(), body }
            }
        }
        Ifz { scrut, zero, var, succ } => {
            let (scrut, zero) = (r(scrut, counter), r(zero, counter));
            let (v, succ) = bind(&[var], succ, counter);
            Ifz { scrut, zero, var: v[0].clone(), succ }
        }
        Sigma { var, fst, snd } => {
            let fst = r(fst, counter);
            let (v, snd) = bind(&[var], snd, counter);
            Sigma { var: v[0].clone(), fst, snd }
        }
        Subset { var, base, pred } => {
            let base = r(base, counter);
            let (v, pred) = bind(&[var], pred, counter);
            Subset { var: v[0].clone(), base, pred }
        }
        Let { bound, var, body } => {
            let bound = r(bound, counter);
            let (v, body) = bind(&[var], body, counter);
            Let { bound, var: v[0].clone(), body }
        }
        Ap(a, b) => Ap(r(a, counter), r(b, counter)),
        Pair(a, b) => Pair(r(a, counter), r(b, counter)),
        Suc(a) => Suc(r(a, counter)),
        Fst(a) => Fst(r(a, counter)),
        Snd(a) => Snd(r(a, counter)),
        Eq { ty, lhs, rhs } => Eq { ty: r(ty, counter), lhs: r(lhs, counter), rhs: r(rhs, counter) },
        Rel2 { rel, args } => Rel2 { rel: rel.clone(), args: [r(&args[0], counter), r(&args[1], counter)] },
        Rel3 { rel, args } => Rel3 {
            rel: rel.clone(),
            args: [r(&args[0], counter), r(&args[1], counter), r(&args[2], counter)],
        },
        Cff1 { func, arg } => Cff1 { func: func.clone(), arg: r(arg, counter) },
        Cff2 { func, args } => Cff2 { func: func.clone(), args: [r(&args[0], counter), r(&args[1], counter)] },
        Op { func, arg } => Op { func: func.clone(), arg: r(arg, counter) },
        Arith { func, args } => Arith { func: func.clone(), args: [r(&args[0], counter), r(&args[1], counter)] },
    }
}
