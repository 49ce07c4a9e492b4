use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;

use cctt::eval::{eval_in, EvalError};
use cctt::harness::{self, bound_inputs, check_program_bound, default_mode, Config, Exit, InputSource, SEED_ENV};
use cctt::programs::{self, BUILTIN_IDS};
use cctt::prooftheory::{check_document, Document, ErrorKind};
use cctt::registry::{default_registry, Mode};
use cctt::syntax::{parse, print, Expr};

#[derive(Parser)]
#[command(name = "cctt", version, about = "Evaluate programs, check cost bounds and derivations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Evaluation mode; defaults to each program's own.
    #[arg(long, global = true)]
    mode: Option<Mode>,
    /// Exclusive operand bound for op and arith, e.g. 256 or 2^31.
    #[arg(long, global = true, value_parser = parse_word_size)]
    word_size: Option<BigUint>,
    #[arg(long, global = true)]
    fuel: Option<u64>,
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Sampling seed, decimal or 0x-prefixed. CCTT_SEED takes precedence.
    #[arg(long, global = true, value_parser = parse_seed)]
    seed: Option<u64>,
    /// Print a machine-readable report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Print every intermediate term.
    #[arg(long, global = true)]
    trace: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a closed term and report its value and step count.
    Eval { file: PathBuf },
    /// Check steps(ap(F, V)) <= 1 + eval([V/a]P) at sampled arguments.
    CheckBound {
        /// One of gcd, fib, fib-verified, countdown.
        program: String,
        /// A file holding the bound P, or its text. Defaults to the
        /// program's own bound.
        bound: Option<String>,
    },
    /// Check a derivation document.
    CheckDerivation { file: PathBuf },
    /// Run the acceptance criteria.
    Suite {
        /// Only these criteria, e.g. 1,2,9.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
        /// Run at this many consecutive seeds.
        #[arg(long, default_value_t = 1)]
        sweep: u64,
    },
}

fn parse_word_size(s: &str) -> Result<BigUint, String> {
    let w = match s.split_once('^') {
        Some((b, e)) => {
            let b: BigUint = b.trim().parse().map_err(|e| format!("{e}"))?;
            let e: u32 = e.trim().parse().map_err(|e| format!("{e}"))?;
            b.pow(e)
        }
        None => s.parse().map_err(|e| format!("{e}"))?,
    };
    if w == BigUint::from(0u32) {
        return Err("word size must be positive".into());
    }
    Ok(w)
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let s = s.trim();
    match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    }
    .map_err(|e| format!("bad seed `{s}`: {e}"))
}

impl Common {
    fn config(&self) -> Result<Config, String> {
        let mut cfg = Config { mode: self.mode, ..Config::default() };
        if let Some(w) = &self.word_size {
            cfg.word_size = w.clone();
        }
        if let Some(f) = self.fuel {
            cfg.fuel = f;
        }
        if let Some(n) = self.samples {
            cfg.samples = n;
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Ok(s) = std::env::var(SEED_ENV) {
            cfg.seed = parse_seed(&s).map_err(|e| format!("{SEED_ENV}: {e}"))?;
        }
        Ok(cfg)
    }
}

struct Failure(Exit, String);

fn fail(exit: Exit, msg: impl Into<String>) -> Failure {
    Failure(exit, msg.into())
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| fail(Exit::Parse, format!("{}: {e}", path.display())))
}

fn json_line(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("reports serialize"));
}

fn eval_cmd(file: &Path, common: &Common, cfg: &Config) -> Result<Exit, Failure> {
    let text = read(file)?;
    let e = parse(&text).map_err(|err| fail(Exit::Parse, format!("{}: {err}", file.display())))?;
    let mode = cfg.mode.unwrap_or(Mode::Seq);
    let ec = cfg.eval_config(mode).with_trace(common.trace);
    let unit = if mode == Mode::Par { "span" } else { "steps" };
    match eval_in(&e, &default_registry(), &ec, mode) {
        Ok(run) => {
            if common.json {
                let mut v = serde_json::json!({
                    "file": file.display().to_string(),
                    "mode": mode,
                    "value": print(&run.value),
                    "steps": run.steps,
                    "word_size": cfg.word_size.to_string(),
                });
                if let Some(t) = &run.trace {
                    v["trace"] = std::iter::once(&e).chain(t).map(print).collect();
                }
                json_line(&v);
            } else {
                if let Some(t) = &run.trace {
                    for (i, term) in std::iter::once(&e).chain(t).enumerate() {
                        println!("{i:>4}  {}", print(term));
                    }
                }
                println!("value: {}", print(&run.value));
                println!("{unit}: {}", run.steps);
            }
            Ok(Exit::Pass)
        }
        Err(err) => {
            let exit = match err {
                EvalError::Stuck { .. } => Exit::Stuck,
                EvalError::Fuel { .. } => Exit::Fuel,
            };
            if common.json {
                json_line(&serde_json::json!({
                    "file": file.display().to_string(),
                    "mode": mode,
                    "error": err.to_string(),
                    "steps": err.steps(),
                    "exit": exit.code(),
                }));
            } else {
                eprintln!("{}: {err}", file.display());
            }
            Ok(exit)
        }
    }
}

fn bound_expr(arg: &str) -> Result<Expr, Failure> {
    let path = Path::new(arg);
    let text = if path.is_file() { read(path)? } else { arg.to_string() };
    parse(&text).map_err(|e| fail(Exit::Parse, format!("bound: {e}")))
}

fn check_bound_cmd(program: &str, bound: Option<&str>, common: &Common, cfg: &Config) -> Result<Exit, Failure> {
    let prog = programs::builtin(program, &cfg.word_size).ok_or_else(|| {
        fail(Exit::Parse, format!("unknown program `{program}` (expected one of {})", BUILTIN_IDS.join(", ")))
    })?;
    let p = match bound {
        Some(b) => bound_expr(b)?,
        None => prog.cost.clone(),
    };
    let (source, inputs) = bound_inputs(&prog, cfg).map_err(|e| fail(Exit::Property, format!("sampling: {e}")))?;
    let mode = cfg.mode.unwrap_or_else(|| default_mode(&prog));
    let rep = check_program_bound(&prog, &p, source, &inputs, mode, cfg);
    if common.json {
        json_line(&rep);
    } else {
        let failed = rep.samples.iter().filter(|s| s.failure.is_some()).count();
        println!(
            "{}: {} {} inputs in {mode} mode, {failed} failing: {}",
            rep.program,
            rep.samples.len(),
            match rep.source {
                InputSource::Sampled => "sampled",
                InputSource::Exhaustive => "exhaustive",
            },
            if rep.pass { "pass" } else { "FAIL" }
        );
        if let Some(w) = rep.witness() {
            println!("witness: input {}", w.input);
            if let (Some(steps), Some(b)) = (w.steps, &w.bound) {
                println!("  steps {steps} > 1 + P = {b}");
            }
            if let Some(e) = &w.error {
                println!("  {e}");
            }
        }
    }
    Ok(rep.exit())
}

fn check_derivation_cmd(file: &Path, common: &Common, cfg: &Config) -> Result<Exit, Failure> {
    let text = read(file)?;
    let doc = Document::from_json(&text).map_err(|e| {
        let exit = if e.is_parse() { Exit::Parse } else { Exit::Schema };
        fail(exit, format!("{}: {e}", file.display()))
    })?;
    let rep = check_document(&file.display().to_string(), &doc, &default_registry(), &cfg.budget());
    if common.json {
        json_line(&rep);
    } else {
        match rep.report.first() {
            None => println!(
                "{}: accepted ({} nodes, depth {}, {} sampled instances, {} ms)",
                rep.script, rep.nodes, rep.depth, rep.report.sampled, rep.millis
            ),
            Some(e) => {
                println!("{}: rejected, {} errors", rep.script, rep.report.errors.len());
                println!("first: {e}");
            }
        }
    }
    Ok(match rep.report.first() {
        None => Exit::Pass,
        // An unknown rule tag is a malformed document, not a failed proof.
        Some(e) if e.kind == ErrorKind::UnknownTag => Exit::Schema,
        Some(_) => Exit::Property,
    })
}

fn suite_cmd(only: &[u8], sweep: u64, common: &Common, cfg: &Config) -> Result<Exit, Failure> {
    let reports = harness::sweep(cfg, sweep.max(1), only);
    if common.json {
        if reports.len() == 1 {
            json_line(&reports[0]);
        } else {
            json_line(&reports);
        }
    } else {
        for r in &reports {
            print!("{}", r.table());
            for line in r.failures(3) {
                println!("  {line}");
            }
        }
    }
    Ok(if reports.iter().all(|r| r.pass) { Exit::Pass } else { Exit::Property })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { Exit::Parse.code() as u8 } else { 0 });
        }
    };
    let cfg = match cli.common.config() {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("{msg}");
            return ExitCode::from(Exit::Parse.code() as u8);
        }
    };
    let c = &cli.common;
    let result = match &cli.command {
        Command::Eval { file } => eval_cmd(file, c, &cfg),
        Command::CheckBound { program, bound } => check_bound_cmd(program, bound.as_deref(), c, &cfg),
        Command::CheckDerivation { file } => check_derivation_cmd(file, c, &cfg),
        Command::Suite { only, sweep } => suite_cmd(only, *sweep, c, &cfg),
    };
    let exit = result.unwrap_or_else(|Failure(exit, msg)| {
        eprintln!("{msg}");
        exit
    });
    ExitCode::from(exit.code() as u8)
}
