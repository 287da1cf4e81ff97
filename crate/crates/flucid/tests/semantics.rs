//! End-to-end behavior through the public API: whole programs in, values
//! out, plus the scoping, caching, tracing, and error-reporting contracts
//! the evaluator documents.

mod common;

use common::{run, run_stream, run_window};
use flucid::eval::{eval_program, EvalErrorKind, ProgramError};
use flucid::syntax::{desugar, parse};
use flucid::{EvalSession, Value};

fn ints(xs: &[i64]) -> Vec<Value> {
    xs.iter().map(|&x| Value::Int(x)).collect()
}

#[test]
fn the_running_sum_is_triangular() {
    let src = "y where x = 0 fby.d x + 1; y = x fby.d y + next.d x; end";
    let got = run_window(src, 0, 19).unwrap();
    let want: Vec<Value> = (0..20).map(|i| Value::Int(i * (i + 1) / 2)).collect();
    assert_eq!(got, want);
}

#[test]
fn dimension_queries_default_to_tag_zero() {
    assert_eq!(run("#.d where dimension d; end"), Value::Int(0));
    assert_eq!(run("#.t where dimension t; end"), Value::Int(0));
    // the same holds after navigation elsewhere
    assert_eq!(run("(#.t where dimension t; end) @.d 5"), Value::Int(0));
}

#[test]
fn where_bindings_are_local() {
    let err = eval_program("(y where y = 3; end) + y").unwrap_err();
    let ProgramError::Eval(e) = err else {
        panic!("wanted an evaluation error, got {err}")
    };
    assert_eq!(e.kind, EvalErrorKind::Unbound("y".into()));
}

#[test]
fn inner_definitions_shadow_outer_ones() {
    assert_eq!(
        run("(v where v = 10; end) + v where v = 1; end"),
        Value::Int(11)
    );
    assert_eq!(
        run("f(2) where q = 5; f(a) = a + q where q = 100; end; end"),
        Value::Int(102)
    );
}

#[test]
fn navigation_composes_and_commutes_across_dimensions() {
    let src = "(m @.row 2) @.col 3 where dimension row; dimension col; m = #.row * 10 + #.col; end";
    assert_eq!(run(src), Value::Int(23));
    let flipped =
        "(m @.col 3) @.row 2 where dimension row; dimension col; m = #.row * 10 + #.col; end";
    assert_eq!(run(flipped), Value::Int(23));
}

#[test]
fn context_literals_override_only_their_dimensions() {
    let src = "(#.a + #.b) @ [a:7] where dimension a; dimension b; end";
    assert_eq!(run(src), Value::Int(7));
    let both = "(#.a + #.b) @ [a:7, b:5] where dimension a; dimension b; end";
    assert_eq!(run(both), Value::Int(12));
}

#[test]
fn context_set_navigation_maps_over_members() {
    let src = "x @ {[d:1], [d:3], [d:5]} where x = 0 fby.d x + 10; end";
    assert_eq!(run(src), Value::Seq(ints(&[10, 30, 50])));
}

#[test]
fn functions_pass_dimensions_and_defer_arguments() {
    assert_eq!(
        run("f(e) @.e 4 where dimension e; f(q) = #.q * 2; end"),
        Value::Int(8)
    );
    // call-by-name: the argument is evaluated in the navigated context
    assert_eq!(run("f(#.d) @.d 6 where f(a) = a + a; end"), Value::Int(12));
}

#[test]
fn fixture_programs_evaluate_to_their_documented_values() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../../programs");
    let cases: &[(&str, Value)] = &[
        ("running_sum.fl", Value::Int(15)),
        ("fib.fl", Value::Int(55)),
        ("factorial.fl", Value::Int(120)),
        ("contexts.fl", Value::Int(35)),
        ("raining.fl", Value::Int(4)),
        ("naturals.fl", Value::Int(0)),
        ("filters.fl", Value::Int(1)),
        ("reverse.fl", Value::Int(9)),
    ];
    for (name, want) in cases {
        let src = std::fs::read_to_string(format!("{dir}/{name}")).unwrap();
        assert_eq!(&run(&src), want, "{name}");
    }
}

#[test]
fn fixture_streams_materialize_as_documented() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../../programs");
    let filters = std::fs::read_to_string(format!("{dir}/filters.fl")).unwrap();
    assert_eq!(
        run_stream(&filters).defined_values(),
        &ints(&[1, 4, 7, 8, 10])[..]
    );
    let reverse = std::fs::read_to_string(format!("{dir}/reverse.fl")).unwrap();
    assert_eq!(
        run_stream(&reverse).defined_values(),
        &ints(&[9, 7, 5, 3, 1])[..]
    );
}

#[test]
fn the_cache_changes_nothing_observable() {
    // demand count is exponential in the tag without memoization; the tag
    // stays small enough for the uncached run to finish
    let src = "y @.d 16 where x = 1 fby.d x + x; y = x + next.d x; end";
    let ast = parse(src).unwrap();
    let mut cached = EvalSession::new();
    let core = desugar(&ast, &cached.taken_names()).unwrap();
    let ctx = cached.base_context();
    let a = cached.eval(&core, &ctx).unwrap();

    let mut uncached = EvalSession::new();
    uncached.set_cache(false);
    let b = uncached.eval(&core, &ctx).unwrap();
    assert_eq!(a, b);
    assert_eq!(a, Value::Int(3 << 16));
}

#[test]
fn evaluation_errors_carry_their_site_and_context() {
    let err = eval_program("(1 / (#.d - 2)) @.d 2").unwrap_err();
    let text = err.to_string();
    assert!(text.contains("division by zero"), "{text}");
    assert!(text.contains("[d:2]"), "{text}");

    let err = eval_program("x where x = x + 1; end").unwrap_err();
    assert!(err.to_string().contains("demands itself"), "{err}");

    let err = eval_program("f(1, 2) where f(a) = a; end").unwrap_err();
    let text = err.to_string();
    assert!(text.contains("expects 1"), "{text}");
    assert!(text.contains("got 2"), "{text}");
}

#[test]
fn traces_name_the_rules_in_conclusion_order() {
    let ast = parse("x @.d 1 where x = 7; end").unwrap();
    let mut session = EvalSession::new();
    let core = desugar(&ast, &session.taken_names()).unwrap();
    session.set_tracing(true);
    let ctx = session.base_context();
    session.eval(&core, &ctx).unwrap();
    let rules: Vec<&str> = session.trace().iter().map(|t| t.rule).collect();
    assert_eq!(*rules.last().unwrap(), "E_w");
    assert!(rules.contains(&"E_at"));
    assert!(rules.contains(&"E_vid"));
    let json = flucid::eval::explain_json(session.trace());
    let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert!(parsed.as_array().unwrap().len() >= 4);
}

#[test]
fn markers_are_values_the_program_can_test() {
    assert_eq!(run("iseod eod"), Value::Bool(true));
    assert_eq!(run("isbod eod"), Value::Bool(false));
    assert_eq!(
        run("iseod (x @.d 3) where x = if #.d >= 3 then eod else 1 fi; end"),
        Value::Bool(true)
    );
    // markers absorb arithmetic instead of erroring
    assert_eq!(run("iseod (1 + eod)"), Value::Bool(true));
    assert_eq!(run("isbod (bod * 2)"), Value::Bool(true));
}
