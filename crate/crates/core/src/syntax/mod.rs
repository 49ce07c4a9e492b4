//! Terms, values, substitution and the s-expression text format.

mod expr;
mod parse;
mod print;
mod subst;

pub use expr::{fresh_name, name, Expr, Name};
pub use parse::{is_identifier, is_keyword, par, parse, ParseError, ParseErrorKind};
pub use print::print;
pub use subst::{rename_bound, subst, subst1, subst_map, Binding, NonValueImage};

/// An ordered context of hypotheses `x : A`.
pub type Telescope = Vec<(Name, Expr)>;

#[cfg(test)]
mod tests;
