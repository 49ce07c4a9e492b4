//! Semantic types and (cost) membership.
//!
//! Closed types evaluate to a [`TypeDen`]; membership of closed terms is
//! decided by evaluation, except where a clause quantifies over an
//! infinite type (functions, dependent families, open judgments). Those
//! quantifiers are tested on seeded samples and the verdict records how
//! many were tried.

mod den;
mod member;
mod sample;
#[cfg(test)]
mod tests;

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::eval::{eval_in, eval_numeral, EvalError, EvalResult, NumeralError};
use crate::exec::Exec;
use crate::judgment::{Form, Judgment};
use crate::registry::{EvalConfig, Mode, Registry, DEFAULT_FUEL};
use crate::syntax::{print, subst1, Binding, Expr};

pub use den::{DenoteError, TypeDen};
pub use sample::SampleError;

pub const DEFAULT_SEED: u64 = 0xC0571;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub message: String,
    /// The context instance the failure was observed at.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub instance: Vec<(String, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subject: Option<String>,
    /// Derivation path, for checker failures.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
}

impl Witness {
    pub fn new(message: impl Into<String>) -> Self {
        Witness { message: message.into(), instance: Vec::new(), subject: None, path: None }
    }

    pub fn about(message: impl Into<String>, subject: &Expr) -> Self {
        Witness { subject: Some(print(subject)), ..Witness::new(message) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Outcome {
    Holds,
    Fails { witness: Witness },
    Unknown { reason: String },
}

/// A three-valued answer. `tested` counts the sample points behind it;
/// zero means it was decided outright.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    #[serde(flatten)]
    pub outcome: Outcome,
    pub tested: u64,
}

impl Verdict {
    pub fn holds() -> Self {
        Verdict { outcome: Outcome::Holds, tested: 0 }
    }

    pub fn fails(w: Witness) -> Self {
        Verdict { outcome: Outcome::Fails { witness: w }, tested: 0 }
    }

    pub fn fail(message: impl Into<String>) -> Self {
        Verdict::fails(Witness::new(message))
    }

    pub fn unknown(reason: impl Into<String>) -> Self {
        Verdict { outcome: Outcome::Unknown { reason: reason.into() }, tested: 0 }
    }

    pub fn from_bool(ok: bool, otherwise: impl FnOnce() -> Witness) -> Self {
        if ok {
            Verdict::holds()
        } else {
            Verdict::fails(otherwise())
        }
    }

    pub fn is_holds(&self) -> bool {
        matches!(self.outcome, Outcome::Holds)
    }

    pub fn is_fails(&self) -> bool {
        matches!(self.outcome, Outcome::Fails { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self.outcome, Outcome::Unknown { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.outcome {
            Outcome::Fails { witness } => Some(witness),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self.outcome {
            Outcome::Holds => "holds",
            Outcome::Fails { .. } => "fails",
            Outcome::Unknown { .. } => "unknown",
        }
    }

    pub fn with_tested(mut self, n: u64) -> Self {
        self.tested = n;
        self
    }

    /// Conjunction. A failure wins over an unknown, which wins over holds.
    pub fn and(self, other: Verdict) -> Verdict {
        let tested = self.tested + other.tested;
        let outcome = match (self.outcome, other.outcome) {
            (f @ Outcome::Fails { .. }, _) => f,
            (_, f @ Outcome::Fails { .. }) => f,
            (u @ Outcome::Unknown { .. }, _) => u,
            (_, u) => u,
        };
        Verdict { outcome, tested }
    }

    /// Conjunction that skips `next` once `self` has failed.
    pub fn and_then(self, next: impl FnOnce() -> Verdict) -> Verdict {
        if self.is_fails() {
            self
        } else {
            self.and(next())
        }
    }

    pub fn all(vs: impl IntoIterator<Item = Verdict>) -> Verdict {
        vs.into_iter().fold(Verdict::holds(), Verdict::and)
    }

    /// Attaches a context instance to a failure witness.
    pub fn at_instance(mut self, b: &Binding) -> Self {
        if let Outcome::Fails { witness } = &mut self.outcome {
            if witness.instance.is_empty() {
                witness.instance = b.iter().map(|(x, v)| (x.to_string(), print(v))).collect();
            }
        }
        self
    }

    pub fn at_path(mut self, path: &str) -> Self {
        if let Outcome::Fails { witness } = &mut self.outcome {
            witness.path.get_or_insert_with(|| path.to_string());
        }
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TestBudget {
    /// Step limit for every single evaluation.
    pub fuel: u64,
    /// Instances drawn for an open judgment.
    pub samples: usize,
    /// Arguments drawn when a function type is checked pointwise.
    pub inner_samples: usize,
    /// Universe levels allowed are `0 .. max_level`.
    pub max_level: u32,
    pub seed: u64,
    /// Random numerals are drawn below `2^nat_bits`, size-biased.
    pub nat_bits: u32,
}

impl Default for TestBudget {
    fn default() -> Self {
        TestBudget {
            fuel: DEFAULT_FUEL,
            samples: 64,
            inner_samples: 16,
            max_level: 4,
            seed: DEFAULT_SEED,
            nat_bits: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemError {
    #[error("cost bound {cost} is not a numeral computation: {why}")]
    Presupposition { cost: String, why: String },
    #[error(transparent)]
    Denote(#[from] DenoteError),
    #[error(transparent)]
    Sample(#[from] SampleError),
}

/// The semantic oracle: a registry, an evaluator configuration and a
/// sampling budget.
#[derive(Clone, Debug)]
pub struct Semantics {
    pub registry: Registry,
    pub config: EvalConfig,
    pub budget: TestBudget,
    pub exec: Exec,
}

impl Semantics {
    pub fn new(registry: Registry, config: EvalConfig) -> Self {
        let budget = TestBudget { fuel: config.fuel, ..TestBudget::default() };
        Semantics { registry, config, budget, exec: Exec::default() }
    }

    pub fn with_budget(mut self, budget: TestBudget) -> Self {
        self.config.fuel = budget.fuel;
        self.budget = budget;
        self
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.config.mode = mode;
        self
    }

    pub fn mode(&self) -> Mode {
        self.config.mode
    }

    pub(crate) fn run(&self, e: &Expr, mode: Mode) -> Result<EvalResult, EvalError> {
        eval_in(e, &self.registry, &self.config, mode)
    }

    /// Evaluates in the configured mode, turning stuck terms into a
    /// failure and fuel exhaustion into an unknown.
    pub(crate) fn run_verdict(&self, e: &Expr) -> Result<EvalResult, Verdict> {
        self.run(e, self.config.mode).map_err(|err| eval_verdict(e, &err))
    }

    pub(crate) fn rng(&self, tag: &str) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.budget.seed ^ fnv1a(tag.as_bytes()))
    }

    /// `eval([V/a]P)`
    pub fn measure(&self, p: &Expr, a: &str, v: &Expr) -> Result<BigUint, NumeralError> {
        eval_numeral(&subst1(p, a, v), &self.registry, &self.config)
    }

    /// Decides a closed judgment form.
    pub fn check_closed(&self, form: &Form) -> Verdict {
        match form {
            Form::TypeEq { lhs, rhs } => self.type_eq(lhs, rhs),
            Form::Member { lhs, rhs, ty } => match self.type_denote(ty) {
                Ok(d) => self.member_eq(lhs, rhs, &d),
                Err(e) => e.verdict(),
            },
            Form::Value { lhs, rhs, ty } => {
                if let Some(nv) = [lhs, rhs].into_iter().find(|v| !v.is_value()) {
                    return Verdict::fails(Witness::about("not a value", nv));
                }
                match self.type_denote(ty) {
                    Ok(d) => self.member_eq(lhs, rhs, &d),
                    Err(e) => e.verdict(),
                }
            }
            Form::Cost { lhs, rhs, ty, cost } => match self.type_denote(ty) {
                Ok(d) => match self.member_cost(lhs, rhs, &d, cost) {
                    Ok(v) => v,
                    Err(e) => Verdict::fails(Witness::about(e.to_string(), cost)),
                },
                Err(e) => e.verdict(),
            },
        }
    }

    /// Tests `Γ ⊢ J` at sampled instances of `Γ`. Binders of function
    /// type that `J` does not depend on are dropped first, since they
    /// cannot be sampled.
    pub fn check_open(&self, j: &Judgment) -> Result<Verdict, SemError> {
        if j.ctx.is_empty() {
            return Ok(self.check_closed(&j.form));
        }
        let instances = self.instances_for(j)?;
        let n = instances.len() as u64;
        let verdicts = self.exec.map(&instances, |g| self.check_closed(&j.form.subst(g)).at_instance(g));
        let combined = Verdict::all(verdicts);
        let tested = combined.tested + n;
        Ok(combined.with_tested(tested))
    }
}

impl Semantics {
    /// Sampled instances of the context of `j`, after dropping function
    /// binders `j` does not need.
    pub fn instances_for(&self, j: &Judgment) -> Result<Vec<Binding>, SemError> {
        let ctx = sample::prune(&j.ctx, &j.form);
        let exprs = j.form.exprs();
        Ok(self.sample_instances_for(&ctx, &exprs, &j.to_string())?)
    }
}

pub(crate) fn eval_verdict(e: &Expr, err: &EvalError) -> Verdict {
    match err {
        EvalError::Stuck { .. } => Verdict::fails(Witness::about(format!("evaluation {err}"), e)),
        EvalError::Fuel { steps, .. } => Verdict::unknown(format!("fuel exhausted after {steps} steps on {e}")),
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in bytes {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}
