//! Derivation trees, their JSON form, and the checker.
//!
//! A derivation node names a rule, states its conclusion and carries its
//! premise subtrees plus a small payload (part selectors, step counts,
//! universe levels, names). The checker rebuilds each conclusion from
//! the premises and compares up to alpha; side conditions are decided by
//! evaluation, symbolic stepping, or, for `Instantiate`, by sampling.

mod build;
mod check;
mod doc;
pub mod fixtures;
mod probe;
pub mod scripts;
#[cfg(test)]
mod tests;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::judgment::Judgment;

pub use build::Builder;
pub use check::{CheckError, CheckReport, Checker, ErrorKind, Extension};
pub use doc::{DocError, Document, SCHEMA};
pub use probe::{
    check_derivation, check_document, check_script, checker_for, closed_costs, decrease_probe, recursive_calls, rename_bound,
    soundness_probe, ScriptError, ScriptReport,
};

macro_rules! rule_tags {
    ($($variant:ident => $name:literal),* $(,)?) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum RuleTag { $($variant),* }

        impl RuleTag {
            pub const ALL: &'static [RuleTag] = &[$(RuleTag::$variant),*];

            pub fn name(self) -> &'static str {
                match self { $(RuleTag::$variant => $name),* }
            }
        }

        impl FromStr for RuleTag {
            type Err = String;

            fn from_str(s: &str) -> Result<Self, String> {
                match s {
                    $($name => Ok(RuleTag::$variant),)*
                    other => Err(format!("unknown rule tag `{other}`")),
                }
            }
        }
    };
}

rule_tags! {
    Hyp => "Hyp",
    Weaken => "Weaken",
    Seq => "Seq",
    OpenHeadExp => "OpenHeadExp",
    HeadExp => "HeadExp",
    CostStepPad => "CostStepPad",
    CostReplace => "CostReplace",
    RespEq => "RespEq",
    UnivF => "UnivF",
    UnivE => "UnivE",
    EqF => "EqF",
    EqI => "EqI",
    EqE => "EqE",
    NatF => "NatF",
    NatIZero => "NatI-zero",
    NatISuc => "NatI-suc",
    NatINum => "NatI-num",
    FFE1 => "FFE1",
    FFE2 => "FFE2",
    NatE1 => "NatE1",
    NatE2 => "NatE2",
    SubsetF => "SubsetF",
    SubsetI => "SubsetI",
    SubsetE => "SubsetE",
    RelF => "RelF",
    RelI => "RelI",
    RelE => "RelE",
    SigmaF => "SigmaF",
    SigmaI => "SigmaI",
    SigmaE => "SigmaE",
    FuntimeF => "FuntimeF",
    FuntimeI => "FuntimeI",
    FuntimeE => "FuntimeE",
    CostWeaken => "CostWeaken",
    ArithE => "ArithE",
    BinSeq => "BinSeq",
    Conversion => "Conversion",
    Instantiate => "Instantiate",
}

impl fmt::Display for RuleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A built-in rule, or a rule supplied through [`Checker::with_extension`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Tag(RuleTag),
    Extension(String),
}

impl Rule {
    pub fn parse(s: &str) -> Rule {
        s.parse().map(Rule::Tag).unwrap_or_else(|_| Rule::Extension(s.to_string()))
    }

    pub fn name(&self) -> &str {
        match self {
            Rule::Tag(t) => t.name(),
            Rule::Extension(s) => s,
        }
    }
}

impl From<RuleTag> for Rule {
    fn from(t: RuleTag) -> Self {
        Rule::Tag(t)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
    Both,
}

/// Rule parameters that are not recoverable from the judgments.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Payload {
    /// Selects a numbered part of a rule family (Seq, SubsetE, SigmaE),
    /// or an operand position (RelE).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub part: Option<u8>,
    /// Step count on the left (OpenHeadExp, CostStepPad).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<u64>,
    /// Step count on the right (CostStepPad).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps_right: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub side: Option<Side>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<u32>,
    /// Bound name introduced by the rule (FuntimeI's a').
    #[serde(skip_serializing_if = "Option::is_none")]
    pub var: Option<String>,
}

impl Payload {
    pub fn is_empty(&self) -> bool {
        *self == Payload::default()
    }

    pub fn part(p: u8) -> Self {
        Payload { part: Some(p), ..Payload::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub rule: Rule,
    pub conclusion: Judgment,
    pub premises: Vec<Derivation>,
    pub payload: Payload,
}

impl Derivation {
    pub fn new(rule: impl Into<Rule>, conclusion: Judgment, premises: Vec<Derivation>) -> Self {
        Derivation { rule: rule.into(), conclusion, premises, payload: Payload::default() }
    }

    pub fn with_payload(mut self, payload: Payload) -> Self {
        self.payload = payload;
        self
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Derivation::size).sum::<usize>()
    }

    /// Pre-order walk with paths.
    pub fn walk<'a>(&'a self, path: &str, f: &mut impl FnMut(&str, &'a Derivation)) {
        f(path, self);
        for (i, p) in self.premises.iter().enumerate() {
            p.walk(&child_path(path, i), f);
        }
    }

    /// The node at a path produced by [`Derivation::walk`].
    pub fn at(&self, path: &str) -> Option<&Derivation> {
        let mut cur = self;
        for part in path.split('.').skip(1) {
            cur = cur.premises.get(part.parse::<usize>().ok()?)?;
        }
        Some(cur)
    }

    pub fn at_mut(&mut self, path: &str) -> Option<&mut Derivation> {
        let mut cur = self;
        for part in path.split('.').skip(1) {
            cur = cur.premises.get_mut(part.parse::<usize>().ok()?)?;
        }
        Some(cur)
    }

    /// Applies `f` to every expression in every judgment.
    pub fn map_exprs(&self, f: &impl Fn(&crate::syntax::Expr) -> crate::syntax::Expr) -> Derivation {
        let conclusion = Judgment {
            ctx: self.conclusion.ctx.iter().map(|(x, a)| (x.clone(), f(a))).collect(),
            form: self.conclusion.form.map(f),
        };
        Derivation {
            rule: self.rule.clone(),
            conclusion,
            premises: self.premises.iter().map(|p| p.map_exprs(f)).collect(),
            payload: self.payload.clone(),
        }
    }
}

pub const ROOT: &str = "root";

pub fn child_path(path: &str, i: usize) -> String {
    format!("{path}.{i}")
}
