//! End-to-end tests against the built binary.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_flucid"))
}

fn run_args(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

#[test]
fn run_evaluates_an_expression() {
    let out = run_args(&["run", "-e", "2 + 2 * 20"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "42\n");
}

#[test]
fn run_honors_the_context_flag() {
    let out = run_args(&["run", "-e", "#.d", "--ctx", "d:7"]);
    assert_eq!(stdout_of(&out), "7\n");

    // `--ctx` declares dimensions the program leaves ambient.
    let out = run_args(&["run", "-e", "#.d + #.t", "--ctx", "d:3, t:4"]);
    assert_eq!(stdout_of(&out), "7\n");

    // Redeclaring a dimension resets its tag, shadowing the flag.
    let out = run_args(&[
        "run",
        "-e",
        "#.d + #.t where dimension t; end",
        "--ctx",
        "d:3, t:4",
    ]);
    assert_eq!(stdout_of(&out), "3\n");

    let out = run_args(&["run", "-e", "1", "--ctx", "seq:1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn run_materializes_a_stream() {
    let out = run_args(&[
        "run",
        "-e",
        "x wvr.d x % 2 == 1 where x = if #.d >= 5 then eod else #.d + 1 fi; end",
        "--stream",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "[1 3 5]\n");
}

#[test]
fn run_annotates_streams_with_a_lead_or_a_bod_tail() {
    let out = run_args(&[
        "run",
        "-e",
        "prev.d x where x = if #.d >= 3 then eod else #.d + 1 fi; end",
        "--stream",
    ]);
    assert_eq!(stdout_of(&out), "[1 2]  (lead 1)\n");

    let out = run_args(&[
        "run",
        "-e",
        "x rwvr.d x % 2 == 1 where x = if #.d >= 4 then eod else #.d + 1 fi; end",
        "--stream",
    ]);
    assert_eq!(stdout_of(&out), "[3 1]  (ends bod)\n");
}

#[test]
fn run_prints_raw_windows_with_markers() {
    let out = run_args(&[
        "run",
        "-e",
        "prev.d x where x = if #.d >= 3 then eod else #.d + 1 fi; end",
        "--window",
        "-1..3",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "bod bod 1 2 eod\n");
}

#[test]
fn run_window_follows_the_stream_dimension() {
    let prog = "if #.t >= 2 then eod else #.t * 10 fi";
    let out = run_args(&["run", "-e", prog, "--stream", "t", "--window", "0..2"]);
    assert_eq!(stdout_of(&out), "0 10 eod\n");

    // Without `--stream t` the window walks the ambient dimension, where
    // the expression is constant.
    let out = run_args(&["run", "-e", prog, "--ctx", "t:1", "--window", "0..2"]);
    assert_eq!(stdout_of(&out), "10 10 10\n");
}

#[test]
fn run_traces_to_stderr() {
    let out = run_args(&[
        "run",
        "-e",
        "x @.d 2 where x = 0 fby.d x + 10; end",
        "--trace",
        "text",
    ]);
    assert_eq!(stdout_of(&out), "20\n");
    let trace = stderr_of(&out);
    assert!(trace.contains("E_op"), "missing rule lines:\n{trace}");
    assert!(trace.contains("E_w"), "missing where conclusion:\n{trace}");
}

#[test]
fn run_traces_json() {
    let out = run_args(&["run", "-e", "1 + 2", "--trace", "json"]);
    let trace = stderr_of(&out);
    let parsed: serde_json::Value = serde_json::from_str(&trace).expect("valid json");
    let rules: Vec<&str> = parsed
        .as_array()
        .expect("an array of entries")
        .iter()
        .map(|e| e["rule"].as_str().expect("a rule name"))
        .collect();
    assert_eq!(rules, ["E_cid", "E_cid", "E_op"]);
}

#[test]
fn run_reads_a_program_file() {
    let dir = std::env::temp_dir().join(format!("flucid-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sum.fl");
    std::fs::write(
        &path,
        "y @.d 4 where x = 1 fby.d x + 1; y = x fby.d y + next.d x; end",
    )
    .unwrap();
    let out = run_args(&["run", path.to_str().unwrap()]);
    assert_eq!(stdout_of(&out), "15\n");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn run_reads_stdin_for_dash() {
    let mut child = bin()
        .args(["run", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(b"6 * 7").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(stdout_of(&out), "42\n");
}

#[test]
fn exit_codes_separate_parse_errors_from_evaluation_errors() {
    let out = run_args(&["run", "-e", "1 +"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("parse error"));

    let out = run_args(&["run", "-e", "zz + 1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("not defined"));

    let out = run_args(&["run", "-e", "1 / 0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("division by zero"));

    let out = run_args(&["run"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run_args(&["run", "/no/such/file.fl"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn depth_limit_flag_and_env_are_honored() {
    let prog = "n @.d 100 where n = 0 fby.d n + 1; end";
    let out = run_args(&["run", "-e", prog, "--depth", "5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("depth limit"));

    let out = bin()
        .args(["run", "-e", prog])
        .env("FLUCID_DEPTH", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));

    // The flag wins over the environment.
    let out = bin()
        .args(["run", "-e", prog, "--depth", "100000"])
        .env("FLUCID_DEPTH", "5")
        .output()
        .unwrap();
    assert_eq!(stdout_of(&out), "100\n");
}

#[test]
fn check_runs_all_suites_green() {
    let out = run_args(&["check", "--cases", "8", "--seed", "3"]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    for title in ["golden rows", "axioms", "propositions", "lemmas"] {
        assert!(text.contains(title), "missing {title} in:\n{text}");
    }
    assert!(text.contains("properties passed"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn check_can_run_one_suite() {
    let out = run_args(&["check", "--only", "lemmas", "--cases", "6"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("lemmas"));
    assert!(!text.contains("golden rows"));
}

#[test]
fn dump_ast_prints_a_line_tree() {
    let out = run_args(&["dump-ast", "-e", "first.d (x + 1)"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert_eq!(text, "unop first.d\n  binop +\n    id x\n    int 1\n");
}

#[test]
fn dump_ast_can_show_the_desugared_core() {
    let out = run_args(&["dump-ast", "-e", "second x", "--desugared"]);
    let text = stdout_of(&out);
    // `second` rewrites to first-of-next in the core.
    assert!(text.contains("unop first"), "got:\n{text}");
    assert!(text.contains("unop next"), "got:\n{text}");
}

fn repl(script: &str) -> Output {
    let mut child = bin()
        .arg("repl")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(script.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

#[test]
fn repl_defines_and_evaluates() {
    let out = repl("dimension t;\nx = 10 fby.t x * 2;\nx @.t 3\n:q\n");
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "80\n");
}

#[test]
fn repl_context_command_moves_the_cursor() {
    let out = repl("x = #.d * 2;\nx\n:ctx d:5\nx\n:ctx\n:q\n");
    assert_eq!(stdout_of(&out), "0\n10\n[d:5]\n");
}

#[test]
fn repl_redefinition_takes_effect() {
    let out = repl("x = 1;\nx\nx = 2;\nx\n:q\n");
    assert_eq!(stdout_of(&out), "1\n2\n");
}

#[test]
fn repl_survives_errors_and_keeps_going() {
    let out = repl("1 +\nzz\n40 + 2\n:q\n");
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "42\n");
    let err = stderr_of(&out);
    assert!(err.contains("parse error"));
    assert!(err.contains("not defined"));
}

#[test]
fn repl_trace_toggle() {
    let out = repl(":trace on\n1 + 2\n:trace off\n3 + 4\n:q\n");
    assert_eq!(stdout_of(&out), "3\n7\n");
    let err = stderr_of(&out);
    assert_eq!(err.matches("E_op").count(), 1, "stderr:\n{err}");
}
