//! Seeded random closed terms for property checks.
//!
//! Terms are built over the term fragment of the grammar (no types), with
//! variables drawn only from enclosing binders. Many of them get stuck,
//! which is intended: stuck terms exercise determinism just as well.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::syntax::{par, Expr, Name};

const BIN_FUNS: &[&str] = &["+", "-", "×", "max", "%"];
const REL2: &[&str] = &["<", "≤", "="];
const NAMES: &[&str] = &["x", "y", "z", "u", "v"];

pub struct TermGen {
    rng: ChaCha8Rng,
    counter: usize,
}

impl TermGen {
    pub fn new(seed: u64) -> Self {
        TermGen { rng: ChaCha8Rng::seed_from_u64(seed), counter: 0 }
    }

    /// A closed term of nesting depth at most `depth`.
    pub fn closed(&mut self, depth: u32) -> Expr {
        self.term(depth, &mut Vec::new())
    }

    fn fresh(&mut self) -> Name {
        self.counter += 1;
        let base = NAMES[self.rng.random_range(0..NAMES.len())];
        Name::from(format!("{base}{}", self.counter % 7).as_str())
    }

    fn leaf(&mut self, scope: &[Name]) -> Expr {
        if !scope.is_empty() && self.rng.random_bool(0.5) {
            return Expr::Var(scope[self.rng.random_range(0..scope.len())].clone());
        }
        match self.rng.random_range(0..6) {
            0 => Expr::Triv,
            _ => Expr::num(self.rng.random_range(0..6)),
        }
    }

    fn term(&mut self, depth: u32, scope: &mut Vec<Name>) -> Expr {
        if depth == 0 || self.rng.random_range(0..10) < 2 {
            return self.leaf(scope);
        }
        let d = depth - 1;
        match self.rng.random_range(0..13) {
            0 => Expr::suc(self.term(d, scope)),
            1 => Expr::pair(self.term(d, scope), self.term(d, scope)),
            2 => Expr::fst(self.term(d, scope)),
            3 => Expr::snd(self.term(d, scope)),
            4 => {
                let s = self.term(d, scope);
                let z = self.term(d, scope);
                let x = self.fresh();
                let succ = self.binding(d, scope, std::slice::from_ref(&x));
                Expr::ifz(s, z, &x, succ)
            }
            5 => {
                let m = self.term(d, scope);
                let x = self.fresh();
                let body = self.binding(d, scope, std::slice::from_ref(&x));
                Expr::let_(m, &x, body)
            }
            6 => {
                // A non-recursive function applied to an argument.
                let f = self.fresh();
                let x = self.fresh();
                let body = self.binding(d, scope, std::slice::from_ref(&x));
                let arg = self.term(d, scope);
                Expr::ap(Expr::fun(&f, &x, body), arg)
            }
            7 => {
                let f = BIN_FUNS[self.rng.random_range(0..BIN_FUNS.len())];
                Expr::cff2(f, self.term(d, scope), self.term(d, scope))
            }
            8 => {
                let f = BIN_FUNS[self.rng.random_range(0..BIN_FUNS.len())];
                Expr::arith(f, self.term(d, scope), self.term(d, scope))
            }
            9 => {
                let m1 = self.term(d, scope);
                let m2 = self.term(d, scope);
                let (a, b) = (self.fresh(), self.fresh());
                let body = self.binding(d, scope, &[a.clone(), b.clone()]);
                par(m1, m2, &a, &b, body)
            }
            10 => Expr::ap(self.term(d, scope), self.term(d, scope)),
            11 => {
                // Bounded recursion: counts a small numeral down.
                let f = self.fresh();
                let n = self.fresh();
                let p = self.fresh();
                let zero = self.term(d, scope);
                let body = Expr::ifz(Expr::Var(n.clone()), zero, &p, Expr::ap(Expr::Var(f.clone()), Expr::Var(p.clone())));
                Expr::ap(Expr::fun(&f, &n, body), Expr::num(self.rng.random_range(0..5)))
            }
            _ => self.leaf(scope),
        }
    }

    /// A small closed value: numerals, `triv` and pairs of them.
    pub fn value(&mut self, depth: u32) -> Expr {
        if depth == 0 || self.rng.random_range(0..3) > 0 {
            return match self.rng.random_range(0..5) {
                0 => Expr::Triv,
                _ => Expr::num(self.rng.random_range(0..9)),
            };
        }
        Expr::pair(self.value(depth - 1), self.value(depth - 1))
    }

    /// A closed type over nat, equality, relations, refinement and pairs.
    /// Some are written as computations that evaluate to a type.
    pub fn closed_type(&mut self, depth: u32) -> Expr {
        let k = |g: &mut Self| Expr::num(g.rng.random_range(0..9));
        if depth == 0 {
            return Expr::Nat;
        }
        let d = depth - 1;
        match self.rng.random_range(0..8) {
            0 | 1 => Expr::Nat,
            2 => Expr::eq(Expr::Nat, self.computation(), self.computation()),
            3 => {
                let r = REL2[self.rng.random_range(0..REL2.len())];
                Expr::rel2(r, k(self), k(self))
            }
            4 => {
                let r = REL2[self.rng.random_range(0..REL2.len())];
                let x = self.fresh();
                Expr::subset(&x, Expr::Nat, Expr::rel2(r, Expr::Var(x.clone()), k(self)))
            }
            5 => {
                let x = self.fresh();
                let snd = match self.rng.random_range(0..3) {
                    0 => self.closed_type(d),
                    1 => Expr::eq(Expr::Nat, Expr::Var(x.clone()), Expr::Var(x.clone())),
                    _ => Expr::rel2("≤", Expr::Var(x.clone()), k(self)),
                };
                Expr::sigma(&x, self.closed_type(d), snd)
            }
            6 => {
                let x = self.fresh();
                Expr::let_(self.computation(), &x, self.closed_type(d))
            }
            _ => Expr::ifz(self.computation(), self.closed_type(d), &self.fresh(), self.closed_type(d)),
        }
    }

    /// A closed numeral computation that always evaluates.
    fn computation(&mut self) -> Expr {
        let n = Expr::num(self.rng.random_range(0..6));
        match self.rng.random_range(0..3) {
            0 => n,
            1 => Expr::suc(n),
            _ => Expr::cff2("+", n, Expr::num(self.rng.random_range(0..6))),
        }
    }

    /// A term that reaches `e` after exactly `k` steps in either mode, by
    /// wrapping it in `k` one-step redexes. `e` must be closed.
    pub fn expand(&mut self, e: Expr, k: u64) -> Expr {
        (0..k).fold(e, |acc, _| {
            let x = self.fresh();
            match self.rng.random_range(0..3) {
                0 => Expr::let_(Expr::zero(), &x, acc),
                1 => Expr::ap(Expr::fun(&self.fresh(), &x, acc), Expr::Triv),
                _ => Expr::ifz(Expr::zero(), acc, &x, Expr::Triv),
            }
        })
    }

    fn binding(&mut self, depth: u32, scope: &mut Vec<Name>, xs: &[Name]) -> Expr {
        let n = scope.len();
        scope.extend(xs.iter().cloned());
        let body = self.term(depth, scope);
        scope.truncate(n);
        body
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_terms_are_closed_and_reproducible() {
        let mut g = TermGen::new(7);
        let mut h = TermGen::new(7);
        for _ in 0..200 {
            let e = g.closed(6);
            assert!(e.is_closed(), "{e}");
            assert_eq!(e, h.closed(6));
        }
    }

    #[test]
    fn expansion_takes_exactly_k_steps() {
        use crate::eval::{eval_in, step_in};
        use crate::registry::{default_registry, EvalConfig, Mode};
        let reg = default_registry();
        let cfg = EvalConfig::default();
        let mut g = TermGen::new(3);
        for k in 0..6 {
            let v = g.value(2);
            let e = g.expand(v.clone(), k);
            for mode in [Mode::Seq, Mode::Par] {
                let mut cur = e.clone();
                for _ in 0..k {
                    assert_ne!(cur, v);
                    cur = step_in(&cur, &reg, &cfg, mode).unwrap().unwrap();
                }
                assert_eq!(cur, v);
                assert_eq!(eval_in(&e, &reg, &cfg, mode).unwrap().steps, k);
            }
        }
    }

    #[test]
    fn generated_types_denote() {
        let s = crate::semantics::Semantics::new(crate::registry::default_registry(), Default::default());
        let mut g = TermGen::new(11);
        for _ in 0..200 {
            let a = g.closed_type(3);
            assert!(a.is_closed(), "{a}");
            assert!(s.type_denote(&a).is_ok(), "{a}");
        }
    }
}
