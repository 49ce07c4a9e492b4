//! The JSON document format.
//!
//! Expressions are concrete-syntax strings. A node's context is written
//! in full only when it is not its parent's: `ext` lists binders added to
//! the parent context, and a missing context means the parent's (the
//! empty context at the root).

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::judgment::{Form, Judgment};
use crate::registry::{EvalConfig, Mode};
use crate::syntax::{name, parse, print, Expr, ParseError, Telescope};

use super::{child_path, Derivation, Payload, Rule, ROOT};

pub const SCHEMA: &str = "cctt-derivation/1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub mode: Mode,
    pub word_size: BigUint,
    pub root: Derivation,
}

#[derive(Debug, Error)]
pub enum DocError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("schema: {0}")]
    Schema(String),
    #[error("{path}: {field}: {error}")]
    Parse { path: String, field: String, error: ParseError },
}

impl DocError {
    /// Expression syntax errors, as opposed to document shape errors.
    pub fn is_parse(&self) -> bool {
        matches!(self, DocError::Parse { .. })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDoc {
    schema: String,
    mode: Mode,
    word_size: serde_json::Value,
    root: RawNode,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNode {
    rule: String,
    conclusion: RawJudgment,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    premises: Vec<RawNode>,
    #[serde(default, skip_serializing_if = "Payload::is_empty")]
    payload: Payload,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawJudgment {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ctx: Option<Vec<RawBinder>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ext: Option<Vec<RawBinder>>,
    kind: String,
    lhs: String,
    rhs: String,
    #[serde(default, rename = "type", skip_serializing_if = "Option::is_none")]
    ty: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cost: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBinder {
    var: String,
    #[serde(rename = "type")]
    ty: String,
}

impl Document {
    pub fn new(mode: Mode, word_size: BigUint, root: Derivation) -> Self {
        Document { mode, word_size, root }
    }

    pub fn config(&self) -> EvalConfig {
        EvalConfig::default().with_mode(self.mode).with_word_size(self.word_size.clone())
    }

    pub fn from_json(text: &str) -> Result<Self, DocError> {
        let raw: RawDoc = serde_json::from_str(text)?;
        if raw.schema != SCHEMA {
            return Err(DocError::Schema(format!("unsupported schema `{}` (expected {SCHEMA})", raw.schema)));
        }
        let word_size = match &raw.word_size {
            serde_json::Value::Number(k) => k.as_u64().map(BigUint::from),
            serde_json::Value::String(s) => s.parse().ok(),
            _ => None,
        }
        .ok_or_else(|| DocError::Schema("word_size must be a natural number".into()))?;
        let root = read_node(&raw.root, &Vec::new(), ROOT)?;
        Ok(Document { mode: raw.mode, word_size, root })
    }

    pub fn to_json(&self) -> String {
        let w = match u64::try_from(&self.word_size) {
            Ok(k) => serde_json::Value::from(k),
            Err(_) => serde_json::Value::from(self.word_size.to_string()),
        };
        let raw = RawDoc { schema: SCHEMA.into(), mode: self.mode, word_size: w, root: write_node(&self.root, &Vec::new()) };
        serde_json::to_string_pretty(&raw).expect("documents serialize")
    }
}

fn read_expr(text: &str, path: &str, field: &str) -> Result<Expr, DocError> {
    parse(text).map_err(|error| DocError::Parse { path: path.to_string(), field: field.to_string(), error })
}

fn read_binders(bs: &[RawBinder], path: &str) -> Result<Telescope, DocError> {
    bs.iter()
        .map(|b| Ok((name(&b.var), read_expr(&b.ty, path, &format!("type of {}", b.var))?)))
        .collect()
}

fn read_node(raw: &RawNode, parent: &Telescope, path: &str) -> Result<Derivation, DocError> {
    let j = &raw.conclusion;
    let ctx = match (&j.ctx, &j.ext) {
        (Some(_), Some(_)) => return Err(DocError::Schema(format!("{path}: both ctx and ext given"))),
        (Some(full), None) => read_binders(full, path)?,
        (None, Some(ext)) => {
            let mut c = parent.clone();
            c.extend(read_binders(ext, path)?);
            c
        }
        (None, None) => parent.clone(),
    };
    let lhs = read_expr(&j.lhs, path, "lhs")?;
    let rhs = read_expr(&j.rhs, path, "rhs")?;
    let ty = || -> Result<Expr, DocError> {
        let t = j.ty.as_deref().ok_or_else(|| DocError::Schema(format!("{path}: {} judgment needs a type", j.kind)))?;
        read_expr(t, path, "type")
    };
    let form = match j.kind.as_str() {
        "type_eq" => Form::TypeEq { lhs, rhs },
        "member" => Form::Member { lhs, rhs, ty: ty()? },
        "value" => Form::Value { lhs, rhs, ty: ty()? },
        "cost" => {
            let c = j.cost.as_deref().ok_or_else(|| DocError::Schema(format!("{path}: cost judgment needs a cost")))?;
            Form::Cost { lhs, rhs, ty: ty()?, cost: read_expr(c, path, "cost")? }
        }
        other => return Err(DocError::Schema(format!("{path}: unknown judgment kind `{other}`"))),
    };
    let premises = raw
        .premises
        .iter()
        .enumerate()
        .map(|(i, p)| read_node(p, &ctx, &child_path(path, i)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Derivation {
        rule: Rule::parse(&raw.rule),
        conclusion: Judgment::new(ctx, form),
        premises,
        payload: raw.payload.clone(),
    })
}

fn write_binders(bs: &[(crate::syntax::Name, Expr)]) -> Vec<RawBinder> {
    bs.iter().map(|(x, a)| RawBinder { var: x.to_string(), ty: print(a) }).collect()
}

fn write_node(d: &Derivation, parent: &Telescope) -> RawNode {
    let ctx = &d.conclusion.ctx;
    let (full, ext) = if ctx == parent {
        (None, None)
    } else if ctx.len() > parent.len() && ctx[..parent.len()] == parent[..] {
        (None, Some(write_binders(&ctx[parent.len()..])))
    } else {
        (Some(write_binders(ctx)), None)
    };
    let (kind, lhs, rhs, ty, cost) = match &d.conclusion.form {
        Form::TypeEq { lhs, rhs } => ("type_eq", lhs, rhs, None, None),
        Form::Member { lhs, rhs, ty } => ("member", lhs, rhs, Some(ty), None),
        Form::Value { lhs, rhs, ty } => ("value", lhs, rhs, Some(ty), None),
        Form::Cost { lhs, rhs, ty, cost } => ("cost", lhs, rhs, Some(ty), Some(cost)),
    };
    RawNode {
        rule: d.rule.name().to_string(),
        conclusion: RawJudgment {
            ctx: full,
            ext,
            kind: kind.into(),
            lhs: print(lhs),
            rhs: print(rhs),
            ty: ty.map(print),
            cost: cost.map(print),
        },
        premises: d.premises.iter().map(|p| write_node(p, ctx)).collect(),
        payload: d.payload.clone(),
    }
}
