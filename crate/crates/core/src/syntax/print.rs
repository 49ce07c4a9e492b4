use std::fmt::{self, Write};

use super::expr::Expr;

/// Renders an expression in the s-expression concrete syntax.
pub fn print(e: &Expr) -> String {
    let mut out = String::new();
    write_expr(&mut out, e).expect("writing to a String cannot fail");
    out
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(f, self)
    }
}

enum Part<'a> {
    E(&'a Expr),
    N(&'a str),
}

fn list<W: Write>(out: &mut W, head: &str, parts: &[Part<'_>]) -> fmt::Result {
    write!(out, "({head}")?;
    for p in parts {
        out.write_char(' ')?;
        match p {
            Part::E(e) => write_expr(out, e)?,
            Part::N(n) => out.write_str(n)?,
        }
    }
    out.write_char(')')
}

fn write_expr<W: Write>(out: &mut W, e: &Expr) -> fmt::Result {
    use Expr::*;
    use Part::{E, N};
    match e {
        Var(x) => out.write_str(x),
        Nat => out.write_str("nat"),
        Triv => out.write_str("triv"),
        Num(k) => write!(out, "{k}"),
        Univ(i) => write!(out, "(univ {i})"),
        Funtime { var, dom, cod, cost } => {
            list(out, "funtime", &[N(var), E(dom), E(cod), E(cost)])
        }
        Pi { var, dom, cod } => list(out, "pi", &[N(var), E(dom), E(cod)]),
        Fun { fname, var, body } => list(out, "fun", &[N(fname), N(var), E(body)]),
        Ap(l, r) => list(out, "ap", &[E(l), E(r)]),
        Suc(x) => list(out, "suc", &[E(x)]),
        Ifz { scrut, zero, var, succ } => {
            list(out, "ifz", &[E(scrut), E(zero), N(var), E(succ)])
        }
        Sigma { var, fst, snd } => list(out, "sigma", &[N(var), E(fst), E(snd)]),
        Pair(l, r) => list(out, "pair", &[E(l), E(r)]),
        Fst(x) => list(out, "fst", &[E(x)]),
        Snd(x) => list(out, "snd", &[E(x)]),
        Eq { ty, lhs, rhs } => list(out, "eq", &[E(ty), E(lhs), E(rhs)]),
        Subset { var, base, pred } => list(out, "subset", &[N(var), E(base), E(pred)]),
        Let { bound, var, body } => list(out, "let", &[E(bound), N(var), E(body)]),
        Rel2 { rel, args } => list(out, "rel2", &[N(rel), E(&args[0]), E(&args[1])]),
        Rel3 { rel, args } => {
            list(out, "rel3", &[N(rel), E(&args[0]), E(&args[1]), E(&args[2])])
        }
        Cff1 { func, arg } => list(out, "cff1", &[N(func), E(arg)]),
        Cff2 { func, args } => list(out, "cff2", &[N(func), E(&args[0]), E(&args[1])]),
        Op { func, arg } => list(out, "op", &[N(func), E(arg)]),
        Arith { func, args } => list(out, "arith", &[N(func), E(&args[0]), E(&args[1])]),
    }
}
