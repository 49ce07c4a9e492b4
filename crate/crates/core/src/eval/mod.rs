//! Small-step evaluation with exact step counts.
//!
//! Sequential mode follows the usual call-by-value congruences. Parallel
//! mode steps every steppable child of `ap`, `pair`, `cff2` and `arith`
//! nodes at once, so the step count becomes the span.

mod step;

use num_bigint::BigUint;
use thiserror::Error;

use crate::registry::{EvalConfig, Mode, Registry, RegistryError};
use crate::syntax::{print, Expr};

use step::{Cx, Out};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StuckReason {
    #[error("applied a non-function")]
    NotAFunction,
    #[error("projected from a non-pair")]
    NotAPair,
    #[error("expected a numeral")]
    NotANumeral,
    #[error("operand {operand} is not below the word size")]
    WordGuard { operand: BigUint },
    #[error("{0}")]
    Registry(RegistryError),
    #[error("redex waits on free variable `{0}`")]
    FreeVariable(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("stuck at {}: {reason}", print(term))]
pub struct StepError {
    pub term: Expr,
    pub reason: StuckReason,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("after {steps} steps: {error}")]
    Stuck { steps: u64, error: StepError },
    #[error("fuel exhausted after {steps} steps")]
    Fuel { steps: u64, last: Expr, trace: Option<Vec<Expr>> },
}

impl EvalError {
    pub fn steps(&self) -> u64 {
        match self {
            EvalError::Stuck { steps, .. } | EvalError::Fuel { steps, .. } => *steps,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalResult {
    pub value: Expr,
    /// Cost in sequential mode, span in parallel mode.
    pub steps: u64,
    /// Every term reached, ending with `value`, when tracing is on.
    pub trace: Option<Vec<Expr>>,
}

fn cx<'a>(reg: &'a Registry, cfg: &'a EvalConfig, mode: Mode) -> Cx<'a> {
    Cx { reg, word_size: &cfg.word_size, mode }
}

fn concrete(e: &Expr, out: Out) -> Result<Option<Expr>, StepError> {
    match out {
        Out::Value => Ok(None),
        Out::Next(e2) => Ok(Some(e2)),
        Out::Blocked(v) => Err(StepError { term: e.clone(), reason: StuckReason::FreeVariable(v.to_string()) }),
    }
}

/// One step in `mode`; `None` for values. A redex waiting on a free
/// variable is reported as stuck.
pub fn step_in(e: &Expr, reg: &Registry, cfg: &EvalConfig, mode: Mode) -> Result<Option<Expr>, StepError> {
    concrete(e, cx(reg, cfg, mode).step(e)?)
}

pub fn step_seq(e: &Expr, reg: &Registry, cfg: &EvalConfig) -> Result<Option<Expr>, StepError> {
    step_in(e, reg, cfg, Mode::Seq)
}

pub fn step_par(e: &Expr, reg: &Registry, cfg: &EvalConfig) -> Result<Option<Expr>, StepError> {
    step_in(e, reg, cfg, Mode::Par)
}

/// One step treating free variables as opaque values; `None` when `e` is
/// a value or its next redex waits on a variable.
pub fn step_symbolic_in(
    e: &Expr,
    reg: &Registry,
    cfg: &EvalConfig,
    mode: Mode,
) -> Result<Option<Expr>, StepError> {
    match cx(reg, cfg, mode).step(e)? {
        Out::Next(e2) => Ok(Some(e2)),
        Out::Value | Out::Blocked(_) => Ok(None),
    }
}

pub fn step_symbolic(e: &Expr, reg: &Registry, cfg: &EvalConfig) -> Result<Option<Expr>, StepError> {
    step_symbolic_in(e, reg, cfg, Mode::Seq)
}

/// Iterates `step_in` to a value within the configured fuel.
pub fn eval_in(e: &Expr, reg: &Registry, cfg: &EvalConfig, mode: Mode) -> Result<EvalResult, EvalError> {
    let c = cx(reg, cfg, mode);
    let mut cur = e.clone();
    let mut steps = 0u64;
    let mut trace = cfg.trace.then(Vec::new);
    loop {
        let out = c.step(&cur).map_err(|error| EvalError::Stuck { steps, error })?;
        match concrete(&cur, out).map_err(|error| EvalError::Stuck { steps, error })? {
            None => return Ok(EvalResult { value: cur, steps, trace }),
            Some(next) => {
                if steps >= cfg.fuel {
                    return Err(EvalError::Fuel { steps, last: cur, trace });
                }
                steps += 1;
                if let Some(t) = trace.as_mut() {
                    t.push(next.clone());
                }
                cur = next;
            }
        }
    }
}

/// Evaluates in the configured mode.
pub fn eval(e: &Expr, reg: &Registry, cfg: &EvalConfig) -> Result<EvalResult, EvalError> {
    eval_in(e, reg, cfg, cfg.mode)
}

pub fn eval_seq(e: &Expr, reg: &Registry, cfg: &EvalConfig) -> Result<EvalResult, EvalError> {
    eval_in(e, reg, cfg, Mode::Seq)
}

pub fn eval_par(e: &Expr, reg: &Registry, cfg: &EvalConfig) -> Result<EvalResult, EvalError> {
    eval_in(e, reg, cfg, Mode::Par)
}

/// Steps symbolically at most `max` times, stopping early at a value or
/// a blocked redex. Returns the terms reached, excluding `e`.
pub fn symbolic_run(
    e: &Expr,
    reg: &Registry,
    cfg: &EvalConfig,
    mode: Mode,
    max: u64,
) -> Result<Vec<Expr>, StepError> {
    let mut out = Vec::new();
    let mut cur = e.clone();
    while (out.len() as u64) < max {
        match step_symbolic_in(&cur, reg, cfg, mode)? {
            Some(next) => {
                out.push(next.clone());
                cur = next;
            }
            None => break,
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("evaluating the term: {0}")]
    Term(EvalError),
    #[error("evaluating the bound: {0}")]
    Bound(EvalError),
    #[error("bound evaluated to {0}, not a numeral")]
    NotANumeral(String),
}

/// One cost-bound check: `M ⇓^c V`, `P ⇓ p`, and whether `c ≤ p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCheck {
    pub value: Expr,
    pub steps: u64,
    pub bound: BigUint,
    pub holds: bool,
}

/// Evaluates `m` in the configured mode and `p` to a numeral.
pub fn check_bound(m: &Expr, p: &Expr, reg: &Registry, cfg: &EvalConfig) -> Result<BoundCheck, BoundError> {
    let bound = eval_numeral(p, reg, cfg).map_err(|e| match e {
        NumeralError::Eval(e) => BoundError::Bound(e),
        NumeralError::NotANumeral(v) => BoundError::NotANumeral(print(&v)),
    })?;
    let r = eval(m, reg, cfg).map_err(BoundError::Term)?;
    let holds = BigUint::from(r.steps) <= bound;
    Ok(BoundCheck { value: r.value, steps: r.steps, bound, holds })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumeralError {
    #[error("{0}")]
    Eval(EvalError),
    #[error("evaluated to {}, not a numeral", print(.0))]
    NotANumeral(Expr),
}

/// Evaluates a closed expression sequentially and reads off its numeral.
pub fn eval_numeral(e: &Expr, reg: &Registry, cfg: &EvalConfig) -> Result<BigUint, NumeralError> {
    let r = eval_seq(e, reg, cfg).map_err(NumeralError::Eval)?;
    match r.value {
        Expr::Num(k) => Ok(k),
        other => Err(NumeralError::NotANumeral(other)),
    }
}

#[cfg(test)]
mod tests;
