use num_bigint::BigUint;
use thiserror::Error;

use super::expr::{fresh_name, name, Expr};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected end of input")]
    UnexpectedEof,
    #[error("unexpected `)`")]
    UnexpectedClose,
    #[error("unknown keyword `{0}`")]
    UnknownKeyword(String),
    #[error("`{keyword}` takes {expected} arguments, found {found}")]
    Arity { keyword: String, expected: usize, found: usize },
    #[error("expected a variable name, found `{0}`")]
    BadBinder(String),
    #[error("expected a registry name, found a list")]
    BadRegistryName,
    #[error("expected a universe level, found `{0}`")]
    BadLevel(String),
    #[error("keyword `{0}` cannot stand alone")]
    BareKeyword(String),
    #[error("empty list")]
    EmptyList,
    #[error("trailing input after expression")]
    Trailing,
}

const KEYWORDS: &[&str] = &[
    "fun", "ap", "ifz", "pair", "fst", "snd", "let", "pi", "funtime", "sigma", "subset", "eq",
    "univ", "rel2", "rel3", "cff1", "cff2", "op", "arith", "par", "suc", "nat", "zero", "triv",
];

pub fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

/// True for names that print and parse back as a variable.
pub fn is_identifier(s: &str) -> bool {
    !s.is_empty()
        && !is_keyword(s)
        && !s.chars().all(|c| c.is_ascii_digit())
        && !s.chars().any(|c| c.is_whitespace() || c == '(' || c == ')' || c == ';')
}

/// ASCII spellings accepted for registry names.
fn canonical_registry_name(s: &str) -> &str {
    match s {
        "*" => "×",
        "/" => "÷",
        "<=" => "≤",
        other => other,
    }
}

#[derive(Debug, Clone)]
enum Sexp {
    Atom { text: String, line: usize, col: usize },
    List { items: Vec<Sexp>, line: usize, col: usize },
}

impl Sexp {
    fn pos(&self) -> (usize, usize) {
        match self {
            Sexp::Atom { line, col, .. } | Sexp::List { line, col, .. } => (*line, *col),
        }
    }
}

struct Reader<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl<'a> Reader<'a> {
    fn new(text: &'a str) -> Self {
        Reader { chars: text.chars().peekable(), line: 1, col: 1 }
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { line: self.line, col: self.col, kind }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_space(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c == ';' {
                while let Some(&c) = self.chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_space();
        self.chars.peek().is_none()
    }

    fn read(&mut self) -> Result<Sexp, ParseError> {
        self.skip_space();
        let (line, col) = (self.line, self.col);
        match self.chars.peek() {
            None => Err(self.err(ParseErrorKind::UnexpectedEof)),
            Some(')') => Err(self.err(ParseErrorKind::UnexpectedClose)),
            Some('(') => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_space();
                    match self.chars.peek() {
                        None => return Err(self.err(ParseErrorKind::UnexpectedEof)),
                        Some(')') => {
                            self.bump();
                            return Ok(Sexp::List { items, line, col });
                        }
                        Some(_) => items.push(self.read()?),
                    }
                }
            }
            Some(_) => {
                let mut text = String::new();
                while let Some(&c) = self.chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == ';' {
                        break;
                    }
                    text.push(c);
                    self.bump();
                }
                Ok(Sexp::Atom { text, line, col })
            }
        }
    }
}

/// Parses one expression.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut r = Reader::new(text);
    let s = r.read()?;
    if !r.at_end() {
        return Err(r.err(ParseErrorKind::Trailing));
    }
    to_expr(&s)
}

fn err_at(s: &Sexp, kind: ParseErrorKind) -> ParseError {
    let (line, col) = s.pos();
    ParseError { line, col, kind }
}

fn binder(s: &Sexp) -> Result<String, ParseError> {
    match s {
        Sexp::Atom { text, .. } if is_identifier(text) => Ok(text.clone()),
        Sexp::Atom { text, .. } => Err(err_at(s, ParseErrorKind::BadBinder(text.clone()))),
        Sexp::List { .. } => Err(err_at(s, ParseErrorKind::BadBinder("(…)".into()))),
    }
}

fn reg_name(s: &Sexp) -> Result<String, ParseError> {
    match s {
        Sexp::Atom { text, .. } => Ok(canonical_registry_name(text).to_string()),
        Sexp::List { .. } => Err(err_at(s, ParseErrorKind::BadRegistryName)),
    }
}

fn to_expr(s: &Sexp) -> Result<Expr, ParseError> {
    match s {
        Sexp::Atom { text, .. } => atom(s, text),
        Sexp::List { items, .. } => {
            let Some(head) = items.first() else {
                return Err(err_at(s, ParseErrorKind::EmptyList));
            };
            let kw = match head {
                Sexp::Atom { text, .. } => text.as_str(),
                Sexp::List { .. } => {
                    return Err(err_at(head, ParseErrorKind::UnknownKeyword("(…)".into())))
                }
            };
            let args = &items[1..];
            let arity = |n: usize| {
                if args.len() == n {
                    Ok(())
                } else {
                    Err(err_at(
                        s,
                        ParseErrorKind::Arity { keyword: kw.to_string(), expected: n, found: args.len() },
                    ))
                }
            };
            let e = |i: usize| to_expr(&args[i]);
            Ok(match kw {
                "fun" => {
                    arity(3)?;
                    Expr::fun(&binder(&args[0])?, &binder(&args[1])?, e(2)?)
                }
                "ap" => {
                    arity(2)?;
                    Expr::ap(e(0)?, e(1)?)
                }
                "suc" => {
                    arity(1)?;
                    Expr::suc(e(0)?)
                }
                "ifz" => {
                    arity(4)?;
                    Expr::ifz(e(0)?, e(1)?, &binder(&args[2])?, e(3)?)
                }
                "pair" => {
                    arity(2)?;
                    Expr::pair(e(0)?, e(1)?)
                }
                "fst" => {
                    arity(1)?;
                    Expr::fst(e(0)?)
                }
                "snd" => {
                    arity(1)?;
                    Expr::snd(e(0)?)
                }
                "let" => {
                    arity(3)?;
                    Expr::let_(e(0)?, &binder(&args[1])?, e(2)?)
                }
                "pi" => {
                    arity(3)?;
                    Expr::pi(&binder(&args[0])?, e(1)?, e(2)?)
                }
                "funtime" => {
                    arity(4)?;
                    Expr::funtime(&binder(&args[0])?, e(1)?, e(2)?, e(3)?)
                }
                "sigma" => {
                    arity(3)?;
                    Expr::sigma(&binder(&args[0])?, e(1)?, e(2)?)
                }
                "subset" => {
                    arity(3)?;
                    Expr::subset(&binder(&args[0])?, e(1)?, e(2)?)
                }
                "eq" => {
                    arity(3)?;
                    Expr::eq(e(0)?, e(1)?, e(2)?)
                }
                "univ" => {
                    arity(1)?;
                    match &args[0] {
                        Sexp::Atom { text, .. } if text.parse::<u32>().is_ok() => {
                            Expr::Univ(text.parse().expect("checked"))
                        }
                        Sexp::Atom { text, .. } => {
                            return Err(err_at(&args[0], ParseErrorKind::BadLevel(text.clone())))
                        }
                        Sexp::List { .. } => {
                            return Err(err_at(&args[0], ParseErrorKind::BadLevel("(…)".into())))
                        }
                    }
                }
                "rel2" => {
                    arity(3)?;
                    Expr::rel2(&reg_name(&args[0])?, e(1)?, e(2)?)
                }
                "rel3" => {
                    arity(4)?;
                    Expr::rel3(&reg_name(&args[0])?, e(1)?, e(2)?, e(3)?)
                }
                "cff1" => {
                    arity(2)?;
                    Expr::cff1(&reg_name(&args[0])?, e(1)?)
                }
                "cff2" => {
                    arity(3)?;
                    Expr::cff2(&reg_name(&args[0])?, e(1)?, e(2)?)
                }
                "op" => {
                    arity(2)?;
                    Expr::op(&reg_name(&args[0])?, e(1)?)
                }
                "arith" => {
                    arity(3)?;
                    Expr::arith(&reg_name(&args[0])?, e(1)?, e(2)?)
                }
                "par" => {
                    arity(5)?;
                    let (a, b) = (binder(&args[2])?, binder(&args[3])?);
                    par(e(0)?, e(1)?, &a, &b, e(4)?)
                }
                other => return Err(err_at(head, ParseErrorKind::UnknownKeyword(other.to_string()))),
            })
        }
    }
}

fn atom(s: &Sexp, text: &str) -> Result<Expr, ParseError> {
    if !text.is_empty() && text.chars().all(|c| c.is_ascii_digit()) {
        let k: BigUint = text.parse().expect("digits parse as a natural");
        return Ok(Expr::Num(k));
    }
    match text {
        "nat" => Ok(Expr::Nat),
        "zero" => Ok(Expr::zero()),
        "triv" => Ok(Expr::Triv),
        kw if is_keyword(kw) => Err(err_at(s, ParseErrorKind::BareKeyword(kw.to_string()))),
        x => Ok(Expr::Var(name(x))),
    }
}

/// Binary sequencing: evaluates `m1` and `m2` as a pair, binds the
/// components to `a` and `b`, then runs `body`.
pub fn par(m1: Expr, m2: Expr, a: &str, b: &str, body: Expr) -> Expr {
    let fv = body.free_vars();
    let c = fresh_name("c", |n| n == a || n == b || fv.iter().any(|v| &**v == n));
    Expr::let_(
        Expr::pair(m1, m2),
        &c,
        Expr::let_(
            Expr::fst(Expr::var(&c)),
            a,
            Expr::let_(Expr::snd(Expr::var(&c)), b, body),
        ),
    )
}
