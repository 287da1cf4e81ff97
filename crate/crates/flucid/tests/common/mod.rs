//! Helpers shared by the integration suites: turning concrete streams
//! into program text and running programs through the public API.

#![allow(dead_code)]

use flucid::eval::EvalError;
use flucid::syntax::{desugar, parse};
use flucid::{BoundedStream, EvalSession, Value, DEFAULT_DIM};

pub fn int_literal(v: i64) -> String {
    if v < 0 {
        format!("(0 - {})", -v)
    } else {
        v.to_string()
    }
}

pub fn value_literal(v: &Value) -> String {
    match v {
        Value::Int(k) => int_literal(*k),
        Value::Bool(true) => "T".to_string(),
        Value::Bool(false) => "F".to_string(),
        other => panic!("no literal form for {other}"),
    }
}

/// Program text whose value along `d` is exactly `s`: `bod` below tag 0,
/// the elements over `0..len`, `eod` beyond.
pub fn stream_expr(s: &BoundedStream) -> String {
    assert_eq!(s.lead(), 0, "only canonical streams have a literal form");
    let mut chain = String::from("eod");
    for v in s.defined_values().iter().rev() {
        chain = format!("{} fby.d ({chain})", value_literal(v));
    }
    format!("if #.d < 0 then bod else ({chain}) fi")
}

/// Parses, desugars, and evaluates a complete program at the base
/// context.
pub fn run(src: &str) -> Value {
    flucid::eval::eval_program(src).unwrap_or_else(|e| panic!("{src}\n{e}"))
}

pub fn session_for(src: &str) -> (EvalSession, flucid::syntax::Expr) {
    let ast = parse(src).unwrap_or_else(|e| panic!("{src}\n{e}"));
    let session = EvalSession::new();
    let core = desugar(&ast, &session.taken_names()).unwrap_or_else(|e| panic!("{src}\n{e}"));
    (session, core)
}

/// Materializes a program along the ambient dimension.
pub fn run_stream(src: &str) -> BoundedStream {
    let (mut session, core) = session_for(src);
    let ctx = session.base_context();
    session
        .eval_stream(&core, DEFAULT_DIM, &ctx)
        .unwrap_or_else(|e| panic!("{src}\n{e}"))
}

/// Raw values of a program over an inclusive tag window, markers
/// included.
pub fn run_window(src: &str, lo: i64, hi: i64) -> Result<Vec<Value>, EvalError> {
    let (mut session, core) = session_for(src);
    let ctx = session.base_context();
    session.eval_window(&core, DEFAULT_DIM, lo, hi, &ctx)
}

/// The observable profile of a kernel result over the same window the
/// evaluator is probed at.
pub fn kernel_window(s: &BoundedStream, lo: i64, hi: i64) -> Vec<Value> {
    (lo..=hi).map(|i| s.at(i)).collect()
}
