//! Seeded sampling of members of semantic types and of context instances.
//!
//! Numerals are size-biased below `2^nat_bits`. Candidates are mixed with
//! hints: numerals that closed subterms of the remaining context and the
//! judgment evaluate to, and their neighbours. That is what lets
//! rejection sampling meet equality and relation constraints such as
//! `eq(nat, suc n, x)` in a reasonable number of attempts. The first
//! attempts are forced to the boundaries 0, 1 and, when the word size
//! occurs in the context, `w - 1`.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::eval::eval_numeral;
use crate::judgment::Form;
use crate::syntax::{parse, print, subst, subst1, Binding, Expr, Name, Telescope};

use super::den::{expr_numerals, TypeDen};
use super::Semantics;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SampleError {
    #[error("binder `{binder}` has type {ty}, which cannot be sampled")]
    Unsamplable { binder: String, ty: String },
    #[error("no instance found: binder `{binder}` rejected every candidate (empty type?)")]
    Empty { binder: String },
}

/// Attempts per requested sample.
const ATTEMPTS_PER_SAMPLE: usize = 12;
const HINT_FUEL: u64 = 20_000;

const UNIV_POOL: &[&str] = &["nat", "(eq nat 0 0)", "(rel2 < 0 1)"];

pub(crate) fn unsamplable(a: &Expr) -> bool {
    matches!(a, Expr::Funtime { .. } | Expr::Pi { .. })
}

/// Drops binders of function type that nothing later or in the form
/// depends on. Dropping hypotheses only strengthens an open claim.
pub(crate) fn prune(ctx: &Telescope, form: &Form) -> Telescope {
    let mut needed: BTreeSet<Name> = form.free_vars();
    let mut keep = vec![false; ctx.len()];
    for (i, (x, a)) in ctx.iter().enumerate().rev() {
        if needed.contains(x) || !unsamplable(a) {
            keep[i] = true;
            needed.extend(a.free_vars());
        }
    }
    ctx.iter().zip(keep).filter(|(_, k)| *k).map(|(b, _)| b.clone()).collect()
}

struct Draw<'a> {
    rng: &'a mut ChaCha8Rng,
    hints: &'a [BigUint],
    boundary: Option<BigUint>,
    /// A value forced by an equation, used by the next numeral draw.
    pinned: Option<BigUint>,
}

enum Drawn {
    Value(Expr),
    Rejected,
    Unsamplable(&'static str),
}

impl Semantics {
    fn draw_nat(&self, d: &mut Draw<'_>) -> BigUint {
        if let Some(k) = d.pinned.take() {
            return k;
        }
        if let Some(b) = &d.boundary {
            return b.clone();
        }
        if !d.hints.is_empty() && d.rng.random_bool(0.4) {
            return d.hints[d.rng.random_range(0..d.hints.len())].clone();
        }
        let bits = d.rng.random_range(0..=self.budget.nat_bits);
        BigUint::from(d.rng.random_range(0..(1u64 << bits)))
    }

    fn draw(&self, den: &TypeDen, d: &mut Draw<'_>) -> Drawn {
        match den {
            TypeDen::Nat => Drawn::Value(Expr::Num(self.draw_nat(d))),
            TypeDen::Eq { .. } | TypeDen::Rel { .. } => {
                if self.value_rel(&Expr::Triv, &Expr::Triv, den).is_holds() {
                    Drawn::Value(Expr::Triv)
                } else {
                    Drawn::Rejected
                }
            }
            TypeDen::Subset { base, var, pred } => match self.draw(base, d) {
                Drawn::Value(v) => {
                    if self.inhabited_at(&subst1(pred, var, &v)).is_holds() {
                        Drawn::Value(v)
                    } else {
                        Drawn::Rejected
                    }
                }
                other => other,
            },
            TypeDen::Sigma { fst, var, snd } => match self.draw(fst, d) {
                Drawn::Value(a) => match self.type_denote(&subst1(snd, var, &a)) {
                    Ok(d2) => match self.draw(&d2, d) {
                        Drawn::Value(b) => Drawn::Value(Expr::pair(a, b)),
                        other => other,
                    },
                    Err(_) => Drawn::Rejected,
                },
                other => other,
            },
            TypeDen::Univ(_) => {
                let pick = UNIV_POOL[d.rng.random_range(0..UNIV_POOL.len())];
                Drawn::Value(parse(pick).expect("pool types parse"))
            }
            TypeDen::Funtime { .. } | TypeDen::Pi { .. } => Drawn::Unsamplable(den.former()),
        }
    }

    fn boundary(&self, attempt: usize, word_relevant: bool) -> Option<BigUint> {
        match attempt {
            0 => Some(BigUint::zero()),
            1 => Some(BigUint::one()),
            2 if word_relevant => Some(&self.config.word_size - BigUint::one()),
            _ => None,
        }
    }

    /// Up to `n` distinct members of `den`.
    pub fn sample_values(
        &self,
        den: &TypeDen,
        n: usize,
        tag: &str,
        extra_hints: &[BigUint],
    ) -> Result<Vec<Expr>, SampleError> {
        let mut rng = self.rng(tag);
        let mut raw = extra_hints.to_vec();
        den.numerals(&mut raw);
        let word_relevant = raw.contains(&self.config.word_size);
        let hints = neighbours(raw);
        let mut out: Vec<Expr> = Vec::new();
        for attempt in 0..n * ATTEMPTS_PER_SAMPLE {
            if out.len() >= n {
                break;
            }
            let boundary = self.boundary(attempt, word_relevant);
            let mut d = Draw { rng: &mut rng, hints: &hints, boundary, pinned: None };
            match self.draw(den, &mut d) {
                Drawn::Value(v) => {
                    if !out.contains(&v) {
                        out.push(v);
                    }
                }
                Drawn::Rejected => {}
                Drawn::Unsamplable(former) => {
                    return Err(SampleError::Unsamplable { binder: "argument".into(), ty: former.into() })
                }
            }
        }
        Ok(out)
    }

    /// Distinct instances of `ctx`: bindings that give every binder a
    /// member of its type under the earlier choices.
    pub fn sample_instances(&self, ctx: &Telescope) -> Result<Vec<Binding>, SampleError> {
        let tag: Vec<String> = ctx.iter().map(|(x, a)| format!("{x}:{a}")).collect();
        self.sample_instances_for(ctx, &[], &tag.join(","))
    }

    pub(crate) fn sample_instances_for(
        &self,
        ctx: &Telescope,
        extra: &[&Expr],
        tag: &str,
    ) -> Result<Vec<Binding>, SampleError> {
        if ctx.is_empty() {
            return Ok(vec![Binding::new()]);
        }
        let mut rng = self.rng(tag);
        let mut lits = Vec::new();
        for (_, a) in ctx {
            expr_numerals(a, &mut lits);
        }
        let word_relevant = lits.contains(&self.config.word_size);
        let want = self.budget.samples.max(1);
        let mut rejections = vec![0usize; ctx.len()];
        let mut out: Vec<Binding> = Vec::new();
        'attempts: for attempt in 0..want * ATTEMPTS_PER_SAMPLE {
            if out.len() >= want {
                break;
            }
            let boundary = self.boundary(attempt, word_relevant);
            let mut g = Binding::new();
            for (k, (x, a)) in ctx.iter().enumerate() {
                let a1 = subst(a, &g);
                let den = match self.type_denote(&a1) {
                    Ok(d) => d,
                    Err(_) => {
                        rejections[k] += 1;
                        continue 'attempts;
                    }
                };
                let mut raw = Vec::new();
                self.hints_of(&a1, &mut raw);
                for (_, later) in &ctx[k + 1..] {
                    self.hints_of(&subst(later, &g), &mut raw);
                }
                for e in extra {
                    self.hints_of(&subst(e, &g), &mut raw);
                }
                let hints = neighbours(raw);
                let pinned = self.pin(x, &a1, &ctx[k + 1..], &g);
                let mut d = Draw { rng: &mut rng, hints: &hints, boundary: boundary.clone(), pinned };
                match self.draw(&den, &mut d) {
                    Drawn::Value(v) => g.insert(x, v).expect("sampled members are values"),
                    Drawn::Rejected => {
                        rejections[k] += 1;
                        continue 'attempts;
                    }
                    Drawn::Unsamplable(_) => {
                        return Err(SampleError::Unsamplable { binder: x.to_string(), ty: print(a) })
                    }
                }
            }
            if !out.contains(&g) {
                out.push(g);
            }
        }
        if out.is_empty() {
            let worst = rejections.iter().enumerate().max_by_key(|(_, r)| **r).map(|(i, _)| i).unwrap_or(0);
            return Err(SampleError::Empty { binder: ctx[worst].0.to_string() });
        }
        Ok(out)
    }

    /// A numeral forced on `x` by an equation: the predicate of its own
    /// subset type, or a later binder's `eq(nat, suc^j x, e)` with `e`
    /// closed. Only plain numeral binders are pinned.
    fn pin(&self, x: &Name, ty: &Expr, later: &[(Name, Expr)], g: &Binding) -> Option<BigUint> {
        match ty {
            Expr::Nat => {}
            Expr::Subset { var, base, pred } if **base == Expr::Nat => {
                if let Some(k) = self.solve_eq(var, pred) {
                    return Some(k);
                }
            }
            _ => return None,
        }
        later.iter().find_map(|(y, b)| {
            if y == x {
                return None;
            }
            match subst(b, g) {
                Expr::Subset { var, pred, .. } if var != *x => self.solve_eq(x, &pred),
                b => self.solve_eq(x, &b),
            }
        })
    }

    fn solve_eq(&self, x: &Name, e: &Expr) -> Option<BigUint> {
        let Expr::Eq { ty, lhs, rhs } = e else { return None };
        if **ty != Expr::Nat {
            return None;
        }
        let cfg = self.config.clone().with_fuel(HINT_FUEL);
        [(lhs, rhs), (rhs, lhs)].into_iter().find_map(|(side, other)| {
            let mut j = 0u32;
            let mut cur: &Expr = side;
            while let Expr::Suc(inner) = cur {
                j += 1;
                cur = inner;
            }
            if !matches!(cur, Expr::Var(v) if v == x) || !other.is_closed() {
                return None;
            }
            let n = eval_numeral(other, &self.registry, &cfg).ok()?;
            (n >= BigUint::from(j)).then(|| n - BigUint::from(j))
        })
    }

    /// Numerals that closed computations inside `e` evaluate to.
    fn hints_of(&self, e: &Expr, out: &mut Vec<BigUint>) -> bool {
        use Expr::*;
        match e {
            Num(k) => {
                out.push(k.clone());
                true
            }
            Var(_) => false,
            Nat | Triv | Univ(_) => true,
            Fun { .. } => e.is_closed(),
            _ => {
                let mut closed = true;
                for (bound, c) in e.children() {
                    let sub = self.hints_of(c, out);
                    closed &= sub || (!bound.is_empty() && c.free_vars().iter().all(|v| bound.contains(&v)));
                }
                let computation = matches!(
                    e,
                    Ap(..) | Ifz { .. } | Fst(_) | Snd(_) | Let { .. } | Cff1 { .. } | Cff2 { .. } | Op { .. } | Arith { .. }
                );
                if closed && computation {
                    let cfg = self.config.clone().with_fuel(HINT_FUEL);
                    if let Ok(k) = eval_numeral(e, &self.registry, &cfg) {
                        out.push(k);
                    }
                }
                closed
            }
        }
    }
}

/// Each hint with its two neighbours, deduplicated.
fn neighbours(raw: Vec<BigUint>) -> Vec<BigUint> {
    let mut set = BTreeSet::new();
    for k in raw {
        if !k.is_zero() {
            set.insert(&k - BigUint::one());
        }
        set.insert(&k + BigUint::one());
        set.insert(k);
    }
    set.into_iter().collect()
}
