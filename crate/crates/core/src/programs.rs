//! Bundled programs with their argument types, result types and cost
//! bounds. The texts live in `examples/` next to this crate.

use num_bigint::BigUint;

use crate::syntax::{parse, subst1, Expr, Name};

pub const GCD: &str = include_str!("../examples/gcd.cat");
pub const GCD_DOM: &str = include_str!("../examples/gcd.dom.cat");
pub const GCD_COD: &str = include_str!("../examples/gcd.cod.cat");
pub const GCD_COST: &str = include_str!("../examples/gcd.cost.cat");
pub const FIB: &str = include_str!("../examples/fib.cat");
pub const FIB_DOM: &str = include_str!("../examples/fib.dom.cat");
pub const FIB_COD: &str = include_str!("../examples/fib.cod.cat");
pub const FIB_COST: &str = include_str!("../examples/fib.cost.cat");
pub const FIB_COST_VERIFIED: &str = include_str!("../examples/fib.cost.verified.cat");
pub const COUNTDOWN: &str = include_str!("../examples/countdown.cat");
pub const COUNTDOWN_DOM: &str = include_str!("../examples/countdown.dom.cat");
pub const COUNTDOWN_COD: &str = include_str!("../examples/countdown.cod.cat");
pub const COUNTDOWN_COST: &str = include_str!("../examples/countdown.cost.cat");

/// Free variable standing for the word size in bundled types.
pub const WORD_VAR: &str = "W";

/// A recursive function `fun f a. body` with its specification
/// `(a : dom) → cod [cost]`.
#[derive(Clone, Debug)]
pub struct Program {
    pub id: &'static str,
    pub fun: Expr,
    pub dom: Expr,
    pub cod: Expr,
    pub cost: Expr,
}

impl Program {
    /// The self-reference and argument names of the function.
    pub fn binders(&self) -> (Name, Name) {
        match &self.fun {
            Expr::Fun { fname, var, .. } => (fname.clone(), var.clone()),
            _ => unreachable!("bundled programs are functions"),
        }
    }

    pub fn arg(&self) -> Name {
        self.binders().1
    }

    /// `funtime(a, dom, cod, cost)`
    pub fn spec(&self) -> Expr {
        Expr::funtime(&self.arg(), self.dom.clone(), self.cod.clone(), self.cost.clone())
    }

    /// The cost bound at a given argument.
    pub fn cost_at(&self, v: &Expr) -> Expr {
        subst1(&self.cost, &self.arg(), v)
    }

    pub fn apply(&self, v: Expr) -> Expr {
        Expr::ap(self.fun.clone(), v)
    }
}

fn p(text: &str) -> Expr {
    parse(text).expect("bundled program parses")
}

fn with_word(text: &str, w: &BigUint) -> Expr {
    subst1(&p(text), WORD_VAR, &Expr::Num(w.clone()))
}

pub fn gcd(word_size: &BigUint) -> Program {
    Program {
        id: "gcd",
        fun: p(GCD),
        dom: with_word(GCD_DOM, word_size),
        cod: p(GCD_COD),
        cost: p(GCD_COST),
    }
}

pub fn fib() -> Program {
    Program { id: "fib", fun: p(FIB), dom: p(FIB_DOM), cod: p(FIB_COD), cost: p(FIB_COST) }
}

/// fib with the span bound its derivation establishes.
pub fn fib_verified() -> Program {
    Program { id: "fib-verified", cost: p(FIB_COST_VERIFIED), ..fib() }
}

pub fn countdown() -> Program {
    Program {
        id: "countdown",
        fun: p(COUNTDOWN),
        dom: p(COUNTDOWN_DOM),
        cod: p(COUNTDOWN_COD),
        cost: p(COUNTDOWN_COST),
    }
}

pub const BUILTIN_IDS: &[&str] = &["gcd", "fib", "fib-verified", "countdown"];

pub fn builtin(id: &str, word_size: &BigUint) -> Option<Program> {
    match id {
        "gcd" => Some(gcd(word_size)),
        "fib" => Some(fib()),
        "fib-verified" => Some(fib_verified()),
        "countdown" => Some(countdown()),
        _ => None,
    }
}
