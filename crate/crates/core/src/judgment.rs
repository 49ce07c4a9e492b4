//! Hypothetical judgments `Γ ⊢ J`, shared by the semantic checks and the
//! derivation checker.

use std::collections::BTreeSet;
use std::fmt;

use crate::syntax::{subst, Binding, Expr, Name, Telescope};

/// The four judgment forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Form {
    /// `A = A' type`
    TypeEq { lhs: Expr, rhs: Expr },
    /// `M = M' ∈ A`
    Member { lhs: Expr, rhs: Expr, ty: Expr },
    /// `M = M' ∈ A [P]`
    Cost { lhs: Expr, rhs: Expr, ty: Expr, cost: Expr },
    /// `V = V' ∈₀ A`
    Value { lhs: Expr, rhs: Expr, ty: Expr },
}

impl Form {
    pub fn kind(&self) -> &'static str {
        match self {
            Form::TypeEq { .. } => "type_eq",
            Form::Member { .. } => "member",
            Form::Cost { .. } => "cost",
            Form::Value { .. } => "value",
        }
    }

    /// Every expression position, in a fixed order.
    pub fn exprs(&self) -> Vec<&Expr> {
        match self {
            Form::TypeEq { lhs, rhs } => vec![lhs, rhs],
            Form::Member { lhs, rhs, ty } | Form::Value { lhs, rhs, ty } => vec![lhs, rhs, ty],
            Form::Cost { lhs, rhs, ty, cost } => vec![lhs, rhs, ty, cost],
        }
    }

    pub fn map(&self, f: impl Fn(&Expr) -> Expr) -> Form {
        match self {
            Form::TypeEq { lhs, rhs } => Form::TypeEq { lhs: f(lhs), rhs: f(rhs) },
            Form::Member { lhs, rhs, ty } => Form::Member { lhs: f(lhs), rhs: f(rhs), ty: f(ty) },
            Form::Value { lhs, rhs, ty } => Form::Value { lhs: f(lhs), rhs: f(rhs), ty: f(ty) },
            Form::Cost { lhs, rhs, ty, cost } => {
                Form::Cost { lhs: f(lhs), rhs: f(rhs), ty: f(ty), cost: f(cost) }
            }
        }
    }

    pub fn subst(&self, b: &Binding) -> Form {
        self.map(|e| subst(e, b))
    }

    pub fn free_vars(&self) -> BTreeSet<Name> {
        self.exprs().into_iter().flat_map(|e| e.free_vars()).collect()
    }

    /// Equality up to renaming of bound variables.
    pub fn alpha_eq(&self, other: &Form) -> bool {
        self.kind() == other.kind()
            && self.exprs().iter().zip(other.exprs()).all(|(a, b)| a.alpha_eq(b))
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Form::TypeEq { lhs, rhs } => write!(f, "{lhs} = {rhs} type"),
            Form::Member { lhs, rhs, ty } => write!(f, "{lhs} = {rhs} ∈ {ty}"),
            Form::Value { lhs, rhs, ty } => write!(f, "{lhs} = {rhs} ∈₀ {ty}"),
            Form::Cost { lhs, rhs, ty, cost } => write!(f, "{lhs} = {rhs} ∈ {ty} [{cost}]"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Judgment {
    pub ctx: Telescope,
    pub form: Form,
}

impl Judgment {
    pub fn closed(form: Form) -> Self {
        Judgment { ctx: Vec::new(), form }
    }

    pub fn new(ctx: Telescope, form: Form) -> Self {
        Judgment { ctx, form }
    }

    pub fn is_closed(&self) -> bool {
        self.ctx.is_empty()
    }

    pub fn binds(&self, x: &str) -> bool {
        self.ctx.iter().any(|(y, _)| &**y == x)
    }

    pub fn lookup(&self, x: &str) -> Option<&Expr> {
        self.ctx.iter().find(|(y, _)| &**y == x).map(|(_, a)| a)
    }

    /// `Γ, x : A`
    pub fn extend(ctx: &Telescope, x: &str, a: Expr) -> Telescope {
        let mut out = ctx.clone();
        out.push((Name::from(x), a));
        out
    }

    /// Contexts agree binder for binder, types up to alpha.
    pub fn ctx_alpha_eq(a: &Telescope, b: &Telescope) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|((x, s), (y, t))| x == y && s.alpha_eq(t))
    }

    pub fn alpha_eq(&self, other: &Judgment) -> bool {
        Self::ctx_alpha_eq(&self.ctx, &other.ctx) && self.form.alpha_eq(&other.form)
    }

    /// Distinct names, and every type and the form only mention earlier
    /// binders. Returns the offending variable otherwise.
    pub fn scope_error(&self) -> Option<String> {
        let mut seen: BTreeSet<Name> = BTreeSet::new();
        for (x, a) in &self.ctx {
            if let Some(v) = a.free_vars().into_iter().find(|v| !seen.contains(v)) {
                return Some(format!("type of `{x}` mentions `{v}` out of scope"));
            }
            if !seen.insert(x.clone()) {
                return Some(format!("`{x}` is bound twice in the context"));
            }
        }
        self.form
            .free_vars()
            .into_iter()
            .find(|v| !seen.contains(v))
            .map(|v| format!("`{v}` is not bound in the context"))
    }
}

impl fmt::Display for Judgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (x, a)) in self.ctx.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x} : {a}")?;
        }
        if !self.ctx.is_empty() {
            f.write_str(" ")?;
        }
        write!(f, "⊢ {}", self.form)
    }
}
