//! Bound checks over sampled arguments and the acceptance suite.
//!
//! Everything here is deterministic given the inputs, the seed and the
//! configuration, so two runs with the same flags print the same report.

mod bound;
mod criteria;
pub mod oracle;
mod suite;

use num_bigint::BigUint;
use serde::Serialize;

use crate::exec::Exec;
use crate::registry::{default_registry, default_word_size, EvalConfig, Mode, DEFAULT_FUEL};
use crate::semantics::{Semantics, TestBudget, DEFAULT_SEED};

pub use bound::{bound_inputs, check_program_bound, default_mode, BoundReport, InputSource, SampleRecord};
pub use criteria::{criteria, run_criterion, Criterion, Outcome, Record};
pub use suite::{run_suite, sweep, SuiteReport};

pub const DEFAULT_SAMPLES: usize = 256;

/// Environment variable that overrides `--seed`.
pub const SEED_ENV: &str = "CCTT_SEED";

/// Process exit codes shared by every subcommand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Exit {
    Pass = 0,
    Parse = 1,
    Stuck = 2,
    Fuel = 3,
    Schema = 4,
    Property = 5,
}

impl Exit {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Config {
    #[serde(serialize_with = "as_decimal")]
    pub word_size: BigUint,
    /// Evaluation mode; `None` picks each program's own mode.
    pub mode: Option<Mode>,
    pub fuel: u64,
    pub samples: usize,
    pub seed: u64,
    #[serde(skip)]
    pub exec: Exec,
}

fn as_decimal<S: serde::Serializer>(w: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&w.to_string())
}

impl Default for Config {
    fn default() -> Self {
        Config {
            word_size: default_word_size(),
            mode: None,
            fuel: DEFAULT_FUEL,
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
            exec: Exec::default(),
        }
    }
}

impl Config {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_word_size(mut self, w: BigUint) -> Self {
        self.word_size = w;
        self
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub fn eval_config(&self, mode: Mode) -> EvalConfig {
        EvalConfig::default().with_word_size(self.word_size.clone()).with_fuel(self.fuel).with_mode(mode)
    }

    pub fn budget(&self) -> TestBudget {
        TestBudget { fuel: self.fuel, seed: self.seed, ..TestBudget::default() }
    }

    pub fn semantics(&self, mode: Mode) -> Semantics {
        Semantics::new(default_registry(), self.eval_config(mode)).with_budget(self.budget()).with_exec(self.exec)
    }
}

#[cfg(test)]
mod tests;
