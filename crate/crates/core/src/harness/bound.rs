use num_bigint::BigUint;
use serde::Serialize;

use crate::eval::{eval_in, eval_numeral, EvalError, NumeralError};
use crate::programs::Program;
use crate::registry::Mode;
use crate::semantics::SemError;
use crate::syntax::{print, subst1, Expr};

use super::{Config, Exit};

/// Programs over plain `nat` are checked at every `n` up to this.
pub const EXHAUSTIVE_NAT: u64 = 10;

/// Wider than the membership oracle's default so that a few hundred
/// distinct arguments exist.
const SAMPLE_BITS: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InputSource {
    Sampled,
    Exhaustive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Failure {
    Exceeded,
    Stuck,
    Fuel,
    BoundNotNumeral,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleRecord {
    pub input: String,
    pub value: Option<String>,
    pub steps: Option<u64>,
    /// `1 + eval([V/a]P)`, in decimal.
    pub bound: Option<String>,
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<Failure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub program: String,
    pub mode: Mode,
    pub bound_expr: String,
    pub source: InputSource,
    pub samples: Vec<SampleRecord>,
    pub pass: bool,
    pub seed: u64,
    pub config: Config,
}

impl BoundReport {
    /// The first failing sample.
    pub fn witness(&self) -> Option<&SampleRecord> {
        self.samples.iter().find(|s| s.failure.is_some())
    }

    pub fn exit(&self) -> Exit {
        match self.witness().and_then(|s| s.failure) {
            None => Exit::Pass,
            Some(Failure::Stuck) => Exit::Stuck,
            Some(Failure::Fuel) => Exit::Fuel,
            Some(_) => Exit::Property,
        }
    }
}

/// Span bounds are checked in parallel mode, cost bounds sequentially.
pub fn default_mode(prog: &Program) -> Mode {
    if prog.id.starts_with("fib") {
        Mode::Par
    } else {
        Mode::Seq
    }
}

/// Every `n ≤ EXHAUSTIVE_NAT` for `nat` domains, otherwise distinct
/// members of the domain drawn with the configured seed.
pub fn bound_inputs(prog: &Program, cfg: &Config) -> Result<(InputSource, Vec<Expr>), SemError> {
    if prog.dom == Expr::Nat {
        return Ok((InputSource::Exhaustive, (0..=EXHAUSTIVE_NAT).map(Expr::num).collect()));
    }
    let mut sem = cfg.semantics(Mode::Seq);
    sem.budget.nat_bits = SAMPLE_BITS;
    let den = sem.type_denote(&prog.dom)?;
    let vs = sem.sample_values(&den, cfg.samples, &format!("check-bound:{}", prog.id), &[])?;
    Ok((InputSource::Sampled, vs))
}

/// Checks `steps(ap(F, V)) ≤ 1 + eval([V/a]P)` at every input.
pub fn check_program_bound(
    prog: &Program,
    bound: &Expr,
    source: InputSource,
    inputs: &[Expr],
    mode: Mode,
    cfg: &Config,
) -> BoundReport {
    let sem = cfg.semantics(mode);
    let samples = cfg.exec.map(inputs, |v| {
        let mut rec = SampleRecord {
            input: print(v),
            value: None,
            steps: None,
            bound: None,
            verdict: "fail",
            failure: None,
            error: None,
        };
        let p = match eval_numeral(&subst1(bound, &prog.arg(), v), &sem.registry, &sem.config) {
            Ok(p) => p + 1u32,
            Err(e) => {
                rec.failure = Some(match &e {
                    NumeralError::Eval(EvalError::Fuel { .. }) => Failure::Fuel,
                    NumeralError::Eval(EvalError::Stuck { .. }) => Failure::Stuck,
                    NumeralError::NotANumeral(_) => Failure::BoundNotNumeral,
                });
                rec.error = Some(format!("bound: {e}"));
                return rec;
            }
        };
        rec.bound = Some(p.to_string());
        match eval_in(&prog.apply(v.clone()), &sem.registry, &sem.config, mode) {
            Ok(r) => {
                rec.value = Some(print(&r.value));
                rec.steps = Some(r.steps);
                if BigUint::from(r.steps) <= p {
                    rec.verdict = "pass";
                } else {
                    rec.failure = Some(Failure::Exceeded);
                }
            }
            Err(e) => {
                rec.steps = Some(e.steps());
                rec.failure = Some(match e {
                    EvalError::Stuck { .. } => Failure::Stuck,
                    EvalError::Fuel { .. } => Failure::Fuel,
                });
                rec.error = Some(e.to_string());
            }
        }
        rec
    });
    BoundReport {
        program: prog.id.to_string(),
        mode,
        bound_expr: print(bound),
        source,
        pass: samples.iter().all(|s| s.failure.is_none()),
        samples,
        seed: cfg.seed,
        config: cfg.clone(),
    }
}
