use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::eval::{eval_in, eval_seq, step_in, EvalError, StuckReason};
use crate::gen::TermGen;
use crate::programs;
use crate::prooftheory::{closed_costs, fixtures, scripts, CheckReport, Checker, Document};
use crate::registry::{default_registry, Entry, Mode, Registry};
use crate::semantics::{Semantics, TypeDen, Verdict};
use crate::syntax::{par, print, subst1, Expr};

use super::{oracle, Config};

/// Step limit for generated terms, which are small and mostly finish in
/// a few dozen steps.
const GEN_FUEL: u64 = 20_000;

/// One observation in the suite's JSON report. Fields are declared in key
/// order so the serialized object is sorted.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub bound: Value,
    pub criterion: String,
    pub inputs: Value,
    pub observed: Value,
    pub seed: u64,
    pub steps: Option<u64>,
    pub verdict: &'static str,
}

impl Record {
    pub fn pass(&self) -> bool {
        self.verdict == "pass"
    }
}

pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    pub limit: Option<Duration>,
    run: fn(&Config) -> Vec<Record>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub id: u8,
    pub title: &'static str,
    pub pass: bool,
    /// Wall-clock time; kept out of the JSON so reports stay reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
    pub limit_ms: Option<u64>,
    pub checked: usize,
    pub failed: usize,
    pub records: Vec<Record>,
}

pub fn criteria() -> Vec<Criterion> {
    let s = |k: u64| Some(Duration::from_secs(k));
    vec![
        Criterion { id: 1, title: "gcd bound reads 5 at x = 0 and 8 + 8x above", limit: s(1), run: c1 },
        Criterion { id: 2, title: "gcd on a 16 x 16 grid: value and cost bound", limit: s(5), run: c2 },
        Criterion { id: 3, title: "fib span bound at 0, 1, 2", limit: None, run: c3 },
        Criterion { id: 4, title: "fib up to 10 in parallel mode: value and span bound", limit: s(10), run: c4 },
        Criterion { id: 5, title: "parallel pairs take max(c1, c2) + 5 steps", limit: None, run: c5 },
        Criterion { id: 6, title: "head expansion pads the cost bound exactly", limit: None, run: c6 },
        Criterion { id: 7, title: "stepping is deterministic; span is at most cost", limit: None, run: c7 },
        Criterion { id: 8, title: "word-size guard on op and arith", limit: None, run: c8 },
        Criterion { id: 9, title: "derivations, fixtures, mutations and closed costs", limit: s(30), run: c9 },
        Criterion { id: 10, title: "equality is symmetric and transitive; denotation is deterministic", limit: None, run: c10 },
    ]
}

pub fn run_criterion(c: &Criterion, cfg: &Config) -> Outcome {
    let start = Instant::now();
    let mut records = (c.run)(cfg);
    let elapsed = start.elapsed();
    if let Some(limit) = c.limit {
        if elapsed > limit {
            let r = Rec { id: c.id, seed: cfg.seed };
            records.push(r.make(
                json!({ "check": "runtime" }),
                json!({ "ms": elapsed.as_millis() as u64 }),
                json!({ "ms": limit.as_millis() as u64 }),
                false,
                None,
            ));
        }
    }
    let failed = records.iter().filter(|r| !r.pass()).count();
    Outcome {
        id: c.id,
        title: c.title,
        pass: failed == 0 && !records.is_empty(),
        elapsed,
        limit_ms: c.limit.map(|l| l.as_millis() as u64),
        checked: records.len(),
        failed,
        records,
    }
}

#[derive(Clone, Copy)]
struct Rec {
    id: u8,
    seed: u64,
}

impl Rec {
    fn make(self, inputs: Value, observed: Value, bound: Value, ok: bool, steps: Option<u64>) -> Record {
        Record {
            bound,
            criterion: self.id.to_string(),
            inputs,
            observed,
            seed: self.seed,
            steps,
            verdict: if ok { "pass" } else { "fail" },
        }
    }

    fn error(self, inputs: Value, what: impl std::fmt::Display) -> Record {
        self.make(inputs, json!({ "error": what.to_string() }), Value::Null, false, None)
    }

    /// A count that must reach `at_least`.
    fn count(self, check: &str, n: usize, at_least: usize) -> Record {
        self.make(json!({ "check": check }), json!(n), json!({ "at_least": at_least }), n >= at_least, None)
    }
}

fn num(k: &BigUint) -> Expr {
    Expr::Num(k.clone())
}

fn pair_of(v: &Expr) -> Option<(BigUint, BigUint)> {
    match v {
        Expr::Pair(l, r) => Some((l.as_numeral()?.clone(), r.as_numeral()?.clone())),
        _ => None,
    }
}

fn gen_fuel(cfg: &Config) -> u64 {
    cfg.fuel.min(GEN_FUEL)
}

fn c1(cfg: &Config) -> Vec<Record> {
    let r = Rec { id: 1, seed: cfg.seed };
    let prog = programs::gcd(&cfg.word_size);
    let sem = cfg.semantics(Mode::Seq);
    let drawn = match sem.type_denote(&prog.dom).map_err(|e| e.to_string()).and_then(|den| {
        sem.sample_values(&den, cfg.samples, "criterion-1", &[]).map_err(|e| e.to_string())
    }) {
        Ok(vs) => vs,
        Err(e) => return vec![r.error(json!({ "check": "sampling" }), e)],
    };
    let mut args: BTreeSet<(BigUint, BigUint)> = BTreeSet::new();
    for (x, y) in drawn.iter().filter_map(pair_of) {
        args.insert((BigUint::zero(), y.clone()));
        args.insert((x, y));
    }
    let args: Vec<_> = args.into_iter().collect();
    let mut out = sem.exec.map(&args, |(x, y)| {
        let inputs = json!({ "x": x.to_string(), "y": y.to_string() });
        let want = oracle::gcd_measure(x);
        match sem.measure(&prog.cost, &prog.arg(), &Expr::pair(num(x), num(y))) {
            Ok(got) => r.make(inputs, json!(got.to_string()), json!(want.to_string()), got == want, None),
            Err(e) => r.error(inputs, e),
        }
    });
    let zeros = args.iter().filter(|(x, _)| x.is_zero()).count();
    out.push(r.count("x = 0 samples", zeros, 1));
    out.push(r.count("x > 0 samples", args.len() - zeros, 1));
    out
}

fn c2(cfg: &Config) -> Vec<Record> {
    let r = Rec { id: 2, seed: cfg.seed };
    let prog = programs::gcd(&cfg.word_size);
    let sem = cfg.semantics(Mode::Seq);
    let side = cfg.word_size.to_u64().unwrap_or(u64::MAX).min(16);
    let grid: Vec<(u64, u64)> = (0..side).flat_map(|x| (0..side).map(move |y| (x, y))).collect();
    sem.exec.map(&grid, |&(x, y)| {
        let inputs = json!({ "x": x, "y": y });
        let v = Expr::pair(Expr::num(x), Expr::num(y));
        let bound = match sem.measure(&prog.cost, &prog.arg(), &v) {
            Ok(p) => p + 1u32,
            Err(e) => return r.error(inputs, format!("bound: {e}")),
        };
        match eval_seq(&prog.apply(v), &sem.registry, &sem.config) {
            Ok(run) => {
                let want = oracle::gcd(&x.into(), &y.into());
                let ok = run.value.as_numeral() == Some(&want) && BigUint::from(run.steps) <= bound;
                let observed = json!({ "value": print(&run.value), "expected": want.to_string() });
                r.make(inputs, observed, json!(bound.to_string()), ok, Some(run.steps))
            }
            Err(e) => r.error(inputs, e),
        }
    })
}

fn c3(cfg: &Config) -> Vec<Record> {
    let r = Rec { id: 3, seed: cfg.seed };
    let prog = programs::fib();
    let sem = cfg.semantics(Mode::Seq);
    [(0u64, 1u64), (1, 2), (2, 24)]
        .iter()
        .map(|&(n, want)| {
            let inputs = json!({ "n": n });
            match sem.measure(&prog.cost, &prog.arg(), &Expr::num(n)) {
                Ok(got) => r.make(inputs, json!(got.to_string()), json!(want.to_string()), got == want.into(), None),
                Err(e) => r.error(inputs, e),
            }
        })
        .collect()
}

fn c4(cfg: &Config) -> Vec<Record> {
    let r = Rec { id: 4, seed: cfg.seed };
    let prog = programs::fib();
    let sem = cfg.semantics(Mode::Par);
    let ns: Vec<u64> = (0..=10).collect();
    sem.exec.map(&ns, |&n| {
        let inputs = json!({ "n": n });
        let bound = match sem.measure(&prog.cost, &prog.arg(), &Expr::num(n)) {
            Ok(p) => p + 1u32,
            Err(e) => return r.error(inputs, format!("bound: {e}")),
        };
        match eval_in(&prog.apply(Expr::num(n)), &sem.registry, &sem.config, Mode::Par) {
            Ok(run) => {
                let want = oracle::fib(n);
                let ok = run.value.as_numeral() == Some(&want) && BigUint::from(run.steps) <= bound;
                let observed = json!({ "value": print(&run.value), "expected": want.to_string() });
                r.make(inputs, observed, json!(bound.to_string()), ok, Some(run.steps))
            }
            Err(e) => r.error(inputs, e),
        }
    })
}

/// Draws a closed term that evaluates in `mode` within the generator
/// fuel, together with its value and step count.
fn terminating(g: &mut TermGen, depth: u32, reg: &Registry, cfg: &Config, mode: Mode) -> Option<(Expr, Expr, u64)> {
    let ec = cfg.eval_config(mode).with_fuel(gen_fuel(cfg));
    for _ in 0..10_000 {
        let e = g.closed(depth);
        if let Ok(run) = eval_in(&e, reg, &ec, mode) {
            return Some((e, run.value, run.steps));
        }
    }
    None
}

fn c5(cfg: &Config) -> Vec<Record> {
    const CASES: usize = 100;
    let r = Rec { id: 5, seed: cfg.seed };
    let reg = default_registry();
    let mut g = TermGen::new(cfg.seed ^ 0x5);
    let ec = cfg.eval_config(Mode::Par).with_fuel(gen_fuel(cfg));
    // (m1, v1, c1, m2, v2, c2) with each cost measured on its own.
    let mut cases = Vec::new();
    for i in 0..CASES {
        if i < CASES / 2 {
            let (v1, v2) = (g.value(2), g.value(2));
            cases.push((v1.clone(), v1, 0, v2.clone(), v2, 0));
        } else {
            match (terminating(&mut g, 4, &reg, cfg, Mode::Par), terminating(&mut g, 4, &reg, cfg, Mode::Par)) {
                (Some((m1, v1, c1)), Some((m2, v2, c2))) => cases.push((m1, v1, c1, m2, v2, c2)),
                _ => return vec![r.error(json!({ "check": "generation" }), "no terminating term found")],
            }
        }
    }
    let mut out = cfg.exec.map(&cases, |(m1, v1, c1, m2, v2, c2)| {
        let body = Expr::pair(Expr::var("b"), Expr::var("a"));
        let e = par(m1.clone(), m2.clone(), "a", "b", body.clone());
        let target = subst1(&subst1(&body, "a", v1), "b", v2);
        let want = c1.max(c2) + 5;
        let inputs = json!({ "m1": print(m1), "m2": print(m2), "c1": c1, "c2": c2 });
        let mut cur = e;
        let mut reached = None;
        for k in 0..=want {
            if cur.alpha_eq(&target) {
                reached = Some(k);
                break;
            }
            match step_in(&cur, &reg, &ec, Mode::Par) {
                Ok(Some(next)) => cur = next,
                Ok(None) => break,
                Err(err) => return r.error(inputs, err),
            }
        }
        r.make(inputs, json!({ "reached_at": reached }), json!(want), reached == Some(want), reached)
    });
    let values = cases.iter().filter(|c| c.2 == 0 && c.5 == 0).count();
    out.push(r.count("value-input cases", values, CASES / 2));
    out
}

fn c6(cfg: &Config) -> Vec<Record> {
    const CASES: usize = 500;
    let r = Rec { id: 6, seed: cfg.seed };
    let sem = cfg.semantics(Mode::Seq);
    let mut g = TermGen::new(cfg.seed ^ 0x6);
    // (M, P, k, tight)
    let mut cases = Vec::new();
    for i in 0..CASES {
        let (m, c) = loop {
            match terminating(&mut g, 4, &sem.registry, cfg, Mode::Seq) {
                Some((m, v, c)) if v.as_numeral().is_some() => break (m, c),
                Some(_) => continue,
                None => return vec![r.error(json!({ "check": "generation" }), "no terminating numeral term found")],
            }
        };
        let tight = i % 2 == 0;
        let p = if tight { Expr::num(c) } else { Expr::plus(Expr::num(c), Expr::num((i % 5) as u64)) };
        let k = 1 + (i % 4) as u64;
        cases.push((m, p, k, tight));
    }
    let expanded: Vec<Expr> = cases.iter().map(|(m, _, k, _)| g.expand(m.clone(), *k)).collect();
    let idx: Vec<usize> = (0..cases.len()).collect();
    let cost = |m: &Expr, p: &Expr| sem.member_cost(m, m, &TypeDen::Nat, p).unwrap_or_else(|e| Verdict::unknown(e.to_string()));
    let runs = sem.exec.map(&idx, |&i| {
        let (m, p, k, tight) = &cases[i];
        let m2 = &expanded[i];
        let base = cost(m, p);
        let padded = cost(m2, &Expr::plus(p.clone(), Expr::num(*k)));
        let short = cost(m2, &Expr::plus(p.clone(), Expr::num(k - 1)));
        let ok = base.is_holds() && padded.is_holds() && (!tight || short.is_fails());
        let inputs = json!({ "m": print(m), "p": print(p), "k": k, "tight": tight });
        let observed = json!({ "base": base.label(), "padded_k": padded.label(), "padded_k_minus_1": short.label() });
        (short.is_fails(), r.make(inputs, observed, json!({ "padded_k": "holds" }), ok, None))
    });
    let witnesses = runs.iter().filter(|(w, _)| *w).count();
    let mut out: Vec<Record> = runs.into_iter().map(|(_, rec)| rec).collect();
    out.push(r.count("padding by k - 1 fails", witnesses, 1));
    out
}

fn c7(cfg: &Config) -> Vec<Record> {
    const TERMS: usize = 1000;
    let r = Rec { id: 7, seed: cfg.seed };
    let reg = default_registry();
    let mut g = TermGen::new(cfg.seed ^ 0x7);
    let terms: Vec<Expr> = (0..TERMS).map(|i| g.closed(2 + (i % 5) as u32)).collect();
    let fuel = gen_fuel(cfg);
    let seq = cfg.eval_config(Mode::Seq).with_fuel(fuel);
    let parc = cfg.eval_config(Mode::Par).with_fuel(fuel);
    let mut out = cfg.exec.map(&terms, |e| {
        let inputs = json!({ "term": print(e) });
        // Walk the sequential run, checking every term reached.
        let mut cur = e.clone();
        let mut walked = 0;
        let mut bad: Option<String> = None;
        while walked < fuel {
            let once = step_in(&cur, &reg, &seq, Mode::Seq);
            if once != step_in(&cur, &reg, &seq, Mode::Seq) {
                bad = Some(format!("two different successors of {}", print(&cur)));
                break;
            }
            let par_once = step_in(&cur, &reg, &parc, Mode::Par);
            if cur.is_value() != matches!(once, Ok(None)) || cur.is_value() != matches!(par_once, Ok(None)) {
                bad = Some(format!("value/step mismatch at {}", print(&cur)));
                break;
            }
            match once {
                Ok(Some(next)) => {
                    cur = next;
                    walked += 1;
                }
                _ => break,
            }
        }
        let s = eval_in(e, &reg, &seq, Mode::Seq);
        let p = eval_in(e, &reg, &parc, Mode::Par);
        let (outcome, steps) = match (&s, &p) {
            (Ok(a), Ok(b)) => {
                if !a.value.alpha_eq(&b.value) {
                    bad.get_or_insert(format!("values differ: {} vs {}", print(&a.value), print(&b.value)));
                }
                if b.steps > a.steps {
                    bad.get_or_insert(format!("span {} exceeds cost {}", b.steps, a.steps));
                }
                (json!({ "seq_steps": a.steps, "par_steps": b.steps }), Some(a.steps))
            }
            (Ok(a), Err(err)) => {
                bad.get_or_insert(format!("sequential run finishes but parallel run does not: {err}"));
                (json!({ "seq_steps": a.steps }), Some(a.steps))
            }
            (Err(EvalError::Stuck { .. }), Ok(b)) => {
                bad.get_or_insert("parallel run finishes but sequential run is stuck".into());
                (json!({ "par_steps": b.steps }), None)
            }
            (Err(err), _) => (json!({ "seq": err.to_string() }), None),
        };
        let observed = match &bad {
            Some(why) => json!({ "run": outcome, "problem": why }),
            None => json!({ "run": outcome }),
        };
        r.make(inputs, observed, json!("at most one successor; par ≤ seq"), bad.is_none(), steps)
    });
    // Both populations matter: values for the span comparison, stuck
    // terms for determinism at the point of failure.
    let finished = out.iter().filter(|r| r.steps.is_some()).count();
    out.push(r.count("terms that evaluate", finished, TERMS / 10));
    out.push(r.count("terms that do not evaluate", TERMS - finished, TERMS / 10));
    out
}

fn guard_registry() -> Registry {
    default_registry().register("double", Entry::unary(|m| m * 2u32)).expect("double is not a default name")
}

fn c8(cfg: &Config) -> Vec<Record> {
    const FUNS: &[&str] = &["+", "-", "×", "max", "÷", "%", "double"];
    let r = Rec { id: 8, seed: cfg.seed };
    let reg = guard_registry();
    let w = cfg.word_size.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x8);
    let mut g = TermGen::new(cfg.seed ^ 0x8);
    let small_cap = w.to_u64().unwrap_or(u64::MAX).min(1 << 16);
    let operand = |rng: &mut ChaCha8Rng, big: bool| -> BigUint {
        if big {
            match rng.random_range(0..4) {
                0 => w.clone(),
                1 => &w + 1u32,
                2 => &w * 2u32,
                _ => &w + rng.random_range(0..1000u64),
            }
        } else {
            match rng.random_range(0..3) {
                0 => &w - 1u32,
                _ => BigUint::from(rng.random_range(0..small_cap)),
            }
        }
    };
    // (f, operands, step counts of the operand computations)
    let mut cases = Vec::new();
    for i in 0..cfg.samples.max(1) {
        let f = FUNS[i % FUNS.len()];
        let arity = if f == "double" { 1 } else { 2 };
        let over = rng.random_bool(0.5);
        let mut ops: Vec<BigUint> = Vec::new();
        let which = rng.random_range(0..arity);
        for j in 0..arity {
            let mut k = operand(&mut rng, over && j == which);
            if j == 1 && reg.requires_nonzero_rhs(f) && k.is_zero() {
                k = BigUint::from(1u32);
            }
            ops.push(k);
        }
        let ks: Vec<u64> = (0..arity).map(|_| if i % 3 == 0 { 0 } else { rng.random_range(0..4) }).collect();
        let terms: Vec<Expr> = ops.iter().zip(&ks).map(|(k, &s)| g.expand(num(k), s)).collect();
        let e = if arity == 1 {
            Expr::op(f, terms[0].clone())
        } else {
            Expr::arith(f, terms[0].clone(), terms[1].clone())
        };
        cases.push((f, ops, ks, e));
    }
    cfg.exec.map(&cases, |(f, ops, ks, e)| {
        let inputs = json!({
            "f": f,
            "operands": ops.iter().map(|k| k.to_string()).collect::<Vec<_>>(),
            "operand_steps": ks,
        });
        let guarded = ops.iter().any(|k| *k >= w);
        let mut results = Vec::new();
        for mode in [Mode::Seq, Mode::Par] {
            let want_steps = if mode == Mode::Seq || ks.len() == 1 { ks.iter().sum::<u64>() } else { *ks.iter().max().unwrap() };
            let run = eval_in(e, &reg, &cfg.eval_config(mode), mode);
            let ok = match (&run, guarded) {
                (Err(EvalError::Stuck { steps, error }), true) => {
                    *steps == want_steps && matches!(error.reason, StuckReason::WordGuard { .. })
                }
                (Ok(v), false) => {
                    let want = if ops.len() == 1 { reg.apply1(f, &ops[0]) } else { reg.apply2(f, &ops[0], &ops[1]) };
                    v.steps == want_steps + 1 && want.ok().as_ref() == v.value.as_numeral()
                }
                _ => false,
            };
            let seen = match &run {
                Ok(v) => json!({ "value": print(&v.value), "steps": v.steps }),
                Err(err) => json!({ "stuck": err.to_string(), "steps": err.steps() }),
            };
            results.push((mode.to_string(), ok, seen, want_steps + u64::from(!guarded)));
        }
        let ok = results.iter().all(|x| x.1);
        let observed: serde_json::Map<String, Value> = results.iter().map(|(m, _, s, _)| (m.clone(), s.clone())).collect();
        let bound: serde_json::Map<String, Value> = results.iter().map(|(m, _, _, k)| (m.clone(), json!(k))).collect();
        let bound = json!({ "guarded": guarded, "steps": bound });
        r.make(inputs, Value::Object(observed), bound, ok, None)
    })
}

fn c9(cfg: &Config) -> Vec<Record> {
    let r = Rec { id: 9, seed: cfg.seed };
    let reg = default_registry();
    let checker = |doc: &Document| {
        Checker::new(Semantics::new(reg.clone(), doc.config()).with_budget(cfg.budget()).with_exec(cfg.exec))
    };
    let check = |doc: &Document| -> CheckReport { checker(doc).check(&doc.root) };
    let first = |rep: &CheckReport| match rep.first() {
        None => json!("accepted"),
        Some(e) => json!({ "path": e.path, "kind": e.kind, "rule": e.rule }),
    };
    let mut out = Vec::new();

    let bundled = scripts::bundled(&cfg.word_size);
    for (id, doc) in &bundled {
        let rep = check(doc);
        let inputs = json!({ "check": "bundled", "derivation": id });
        out.push(r.make(inputs, first(&rep), json!("accepted"), rep.is_ok(), None));
    }

    let fxs = fixtures::unit_fixtures();
    // Closed cost conclusions sit inside fixtures; the bundled trees keep
    // their cost judgments under hypotheses.
    let mut costed: Vec<(String, &Document)> = bundled.iter().map(|(id, d)| (id.to_string(), d)).collect();
    costed.extend(fxs.iter().filter(|f| f.expect == fixtures::Expect::Accept).map(|f| (f.name.clone(), &f.doc)));
    let mut total = 0;
    for (name, doc) in costed {
        let costs = closed_costs(&checker(doc), &doc.root);
        total += costs.len();
        for (path, v) in costs {
            let inputs = json!({ "check": "closed cost conclusion", "derivation": name, "path": path });
            out.push(r.make(inputs, json!(v.label()), json!("holds"), v.is_holds(), None));
        }
    }
    out.push(r.count("closed cost conclusions", total, 1));

    let verdicts = cfg.exec.map(&fxs, |fx| {
        let rep = check(&fx.doc);
        let ok = match (&fx.expect, rep.first()) {
            (fixtures::Expect::Accept, None) => true,
            (fixtures::Expect::Reject { path, kind }, Some(e)) => &e.path == path && e.kind == *kind,
            _ => false,
        };
        let want = match &fx.expect {
            fixtures::Expect::Accept => json!("accepted"),
            fixtures::Expect::Reject { path, kind } => json!({ "path": path, "kind": kind }),
        };
        r.make(json!({ "check": "fixture", "fixture": fx.name }), first(&rep), want, ok, None)
    });
    let met = verdicts.iter().filter(|v| v.pass()).count();
    out.extend(verdicts);
    out.push(r.count("fixtures meeting expectations", met, 20));

    let muts = fixtures::mutations(&cfg.word_size);
    let verdicts = cfg.exec.map(&muts, |m| {
        let rep = check(&m.doc);
        let ok = rep.first().is_some_and(|e| e.path == m.path && e.kind == m.kind);
        let inputs = json!({ "check": "mutation", "mutation": m.name, "base": m.base });
        r.make(inputs, first(&rep), json!({ "path": m.path, "kind": m.kind }), ok, None)
    });
    let rejected = verdicts.iter().filter(|v| v.pass()).count();
    out.extend(verdicts);
    out.push(r.count("mutations rejected at the corrupted node", rejected, 10));
    out
}

fn c10(cfg: &Config) -> Vec<Record> {
    const TRIPLES: usize = 200;
    const TYPES: usize = 200;
    let r = Rec { id: 10, seed: cfg.seed };
    let sem = cfg.semantics(Mode::Seq);
    let mut g = TermGen::new(cfg.seed ^ 0xA);

    let mut setups = Vec::new();
    for i in 0..TRIPLES * 4 {
        let a = g.closed_type(3);
        let Ok(den) = sem.type_denote(&a) else { continue };
        let mut pool = sem.sample_values(&den, 2, &format!("criterion-10:{i}"), &[]).unwrap_or_default();
        pool.push(g.value(2));
        let mut pick = |j: usize| {
            let v = pool[(i + j * (1 + i % 3)) % pool.len()].clone();
            g.expand(v, (i + j) as u64 % 3)
        };
        let triple = [pick(0), pick(1), pick(2)];
        setups.push((a, den, triple));
    }
    let judged = sem.exec.map(&setups, |(a, den, [m1, m2, m3])| {
        let eq = |x: &Expr, y: &Expr| sem.member_eq(x, y, den);
        let vs = [eq(m1, m2), eq(m2, m1), eq(m2, m3), eq(m3, m2), eq(m1, m3)];
        let decided = vs.iter().all(|v| !v.is_unknown());
        let symmetric = vs[0].is_holds() == vs[1].is_holds() && vs[2].is_holds() == vs[3].is_holds();
        let transitive = !(vs[0].is_holds() && vs[2].is_holds()) || vs[4].is_holds();
        let inputs = json!({ "type": print(a), "terms": [print(m1), print(m2), print(m3)] });
        let observed = json!({
            "m1=m2": vs[0].label(), "m2=m1": vs[1].label(), "m2=m3": vs[2].label(),
            "m3=m2": vs[3].label(), "m1=m3": vs[4].label(),
        });
        let chained = vs[0].is_holds() && vs[2].is_holds();
        (decided, chained, r.make(inputs, observed, json!("symmetric and transitive"), symmetric && transitive, None))
    });
    let mut out: Vec<Record> = Vec::new();
    let mut chained = 0;
    for (decided, c, rec) in judged {
        if decided && out.len() < TRIPLES {
            chained += usize::from(c);
            out.push(rec);
        }
    }
    let decided = out.len();
    out.push(r.count("decided triples", decided, TRIPLES));
    out.push(r.count("triples with m1 = m2 = m3 chained", chained, 1));

    let types: Vec<Expr> = (0..TYPES).map(|_| g.closed_type(4)).collect();
    let other = sem.clone().with_exec(crate::exec::Exec::Sequential);
    out.extend(sem.exec.map(&types, |a| {
        let d1 = sem.type_denote(a);
        let d2 = sem.type_denote(a);
        let d3 = other.type_denote(a);
        let ok = d1 == d2 && d2 == d3;
        let shown = match &d1 {
            Ok(d) => json!(d.former()),
            Err(e) => json!({ "error": e.to_string() }),
        };
        r.make(json!({ "check": "denotation", "type": print(a) }), shown, json!("three equal denotations"), ok, None)
    }));
    out
}
