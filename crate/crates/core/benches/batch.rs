//! Sequential against rayon execution of the batch workloads.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use cctt::exec::Exec;
use cctt::harness::{bound_inputs, check_program_bound, run_suite, Config};
use cctt::programs;
use cctt::prooftheory::{checker_for, scripts, Checker};
use cctt::registry::{default_registry, default_word_size, Mode};

const POLICIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn bound_checks(c: &mut Criterion) {
    let mut g = c.benchmark_group("gcd bound, 256 samples");
    for (name, exec) in POLICIES {
        let cfg = Config::default().with_exec(exec);
        let prog = programs::gcd(&cfg.word_size);
        let (source, inputs) = bound_inputs(&prog, &cfg).unwrap();
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| check_program_bound(&prog, &prog.cost, source, &inputs, Mode::Seq, &cfg))
        });
    }
    g.finish();
}

fn random_terms(c: &mut Criterion) {
    let mut g = c.benchmark_group("1000 random terms");
    for (name, exec) in POLICIES {
        let cfg = Config::default().with_exec(exec);
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| run_suite(&cfg, &[7])));
    }
    g.finish();
}

fn derivation(c: &mut Criterion) {
    let mut g = c.benchmark_group("gcd derivation");
    g.sample_size(10);
    let (_, doc) = scripts::bundled(&default_word_size()).into_iter().next().unwrap();
    for (name, exec) in POLICIES {
        let budget = Config::default().with_exec(exec).budget();
        let reg = default_registry();
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                let checker = checker_for(&doc, &reg, &budget);
                let checker = Checker::new(checker.sem.with_exec(exec));
                checker.check(&doc.root)
            })
        });
    }
    g.finish();
}

criterion_group!(benches, bound_checks, random_terms, derivation);
criterion_main!(benches);
