use super::*;
use crate::programs;
use crate::registry::Mode;
use crate::syntax::{parse, Expr};

fn cfg() -> Config {
    Config::default()
}

#[test]
fn gcd_bound_holds_on_samples() {
    let c = cfg();
    let prog = programs::gcd(&c.word_size);
    let (source, inputs) = bound_inputs(&prog, &c).unwrap();
    assert_eq!(source, InputSource::Sampled);
    assert!(inputs.len() >= 200, "{} samples", inputs.len());
    let rep = check_program_bound(&prog, &prog.cost, source, &inputs, default_mode(&prog), &c);
    assert!(rep.pass, "{:?}", rep.witness());
    assert_eq!(rep.exit(), Exit::Pass);
}

#[test]
fn gcd_bound_minus_one_has_a_witness() {
    let c = cfg();
    let prog = programs::gcd(&c.word_size);
    let tighter = Expr::cff2("-", prog.cost.clone(), Expr::num(1));
    let (source, inputs) = bound_inputs(&prog, &c).unwrap();
    let rep = check_program_bound(&prog, &tighter, source, &inputs, Mode::Seq, &c);
    assert!(!rep.pass);
    assert_eq!(rep.exit(), Exit::Property);
    let w = rep.witness().unwrap();
    assert!(w.input.starts_with("(pair 0 "), "{w:?}");
}

#[test]
fn fib_is_checked_exhaustively_in_parallel_mode() {
    let c = cfg();
    let prog = programs::fib();
    let (source, inputs) = bound_inputs(&prog, &c).unwrap();
    assert_eq!(source, InputSource::Exhaustive);
    assert_eq!(inputs.len(), 11);
    let rep = check_program_bound(&prog, &prog.cost, source, &inputs, default_mode(&prog), &c);
    assert!(rep.pass, "{:?}", rep.witness());
}

#[test]
fn stuck_and_fuel_failures_map_to_exit_codes() {
    let mut c = cfg();
    let prog = programs::countdown();
    let inputs = [Expr::num(3)];
    let stuck = parse("(fst 0)").unwrap();
    let rep = check_program_bound(&prog, &stuck, InputSource::Sampled, &inputs, Mode::Seq, &c);
    assert_eq!(rep.exit(), Exit::Stuck);
    c.fuel = 2;
    let rep = check_program_bound(&prog, &prog.cost, InputSource::Sampled, &inputs, Mode::Seq, &c);
    assert_eq!(rep.exit(), Exit::Fuel);
}

#[test]
fn cheap_criteria_pass_and_reports_are_reproducible() {
    let c = cfg();
    let a = run_suite(&c, &[1, 3, 5, 8]);
    assert!(a.pass, "{}\n{}", a.table(), a.failures(3).join("\n"));
    let b = run_suite(&c, &[1, 3, 5, 8]);
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn records_serialize_with_sorted_keys() {
    let rep = run_suite(&cfg(), &[3]);
    let text = serde_json::to_string(&rep.criteria[0].records[0]).unwrap();
    let keys = ["\"bound\"", "\"criterion\"", "\"inputs\"", "\"observed\"", "\"seed\"", "\"steps\"", "\"verdict\""];
    let at: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
    assert!(at.windows(2).all(|p| p[0] < p[1]), "{text}");
}
