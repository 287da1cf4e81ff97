//! Command line front end: evaluate programs, materialize streams, dump
//! parse trees, run the verification suites, or work interactively.

mod tree;

use std::collections::HashSet;
use std::io::{BufRead, IsTerminal, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use flucid::eval::{explain, explain_json};
use flucid::harness::{self, Report};
use flucid::syntax::{desugar, desugar_def, parse, parse_line, LineItem, QDef};
use flucid::{Context, EvalSession, DEFAULT_DIM};

#[derive(Parser)]
#[command(name = "flucid", version, about = "Intensional dataflow interpreter")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a program and print the result
    Run(RunArgs),
    /// Run the verification suites and report per property
    Check(CheckArgs),
    /// Print the parse tree of a program
    DumpAst(DumpArgs),
    /// Read definitions and expressions interactively
    Repl,
}

#[derive(Args)]
struct RunArgs {
    /// Program file; `-` reads standard input
    file: Option<PathBuf>,
    /// Program text given inline
    #[arg(short = 'e', long = "expr", value_name = "TEXT")]
    expr: Option<String>,
    /// Context to evaluate in, e.g. `d:3,t:1`; unset dimensions stay 0
    #[arg(long, value_name = "BINDINGS")]
    ctx: Option<String>,
    /// Materialize the result as a stream along DIM instead of one value
    #[arg(long, value_name = "DIM", num_args = 0..=1, default_missing_value = DEFAULT_DIM)]
    stream: Option<String>,
    /// Print raw values over an inclusive tag range `LO..HI` along the
    /// stream dimension, markers included
    #[arg(long, value_name = "LO..HI", allow_hyphen_values = true)]
    window: Option<String>,
    /// Write the evaluation trace to standard error
    #[arg(long, value_name = "FORMAT")]
    trace: Option<TraceFormat>,
    /// Demand depth limit (also: FLUCID_DEPTH)
    #[arg(long, value_name = "N")]
    depth: Option<u64>,
    /// Evaluation step limit (also: FLUCID_STEPS)
    #[arg(long, value_name = "N")]
    steps: Option<u64>,
    /// Disable the (identifier, context) memo
    #[arg(long)]
    no_cache: bool,
}

#[derive(Args)]
struct CheckArgs {
    /// Seed for the generated-stream suites
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Generated cases per property
    #[arg(long, default_value_t = 200)]
    cases: usize,
    /// Run a single suite instead of all four
    #[arg(long, value_enum, value_name = "SUITE")]
    only: Option<Suite>,
}

#[derive(Args)]
struct DumpArgs {
    /// Program file; `-` reads standard input
    file: Option<PathBuf>,
    /// Program text given inline
    #[arg(short = 'e', long = "expr", value_name = "TEXT")]
    expr: Option<String>,
    /// Show the tree after surface forms are rewritten to the core
    #[arg(long)]
    desugared: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum TraceFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Table1,
    Axioms,
    Propositions,
    Lemmas,
}

/// Exit status for anything that went wrong after the command line and
/// program text were understood.
const EXIT_FAIL: u8 = 1;
/// Exit status for unusable input: bad flags, unreadable files, programs
/// that do not parse.
const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let depth = match &cli.cmd {
        Cmd::Run(a) => a.depth,
        _ => None,
    };
    let depth = depth
        .or_else(|| env_limit("FLUCID_DEPTH"))
        .unwrap_or(flucid::eval::DEFAULT_DEPTH);
    // Demand chains recurse once per depth step; size the stack for the
    // configured limit rather than trusting the platform default.
    let stack = (depth as usize)
        .saturating_mul(8 * 1024)
        .clamp(64 << 20, 1 << 30);
    let worker = std::thread::Builder::new()
        .name("eval".into())
        .stack_size(stack)
        .spawn(move || dispatch(cli))
        .expect("spawning the evaluation thread");
    match worker.join() {
        Ok(code) => ExitCode::from(code),
        Err(_) => ExitCode::from(EXIT_FAIL),
    }
}

fn env_limit(name: &str) -> Option<u64> {
    std::env::var(name).ok()?.trim().parse().ok()
}

fn dispatch(cli: Cli) -> u8 {
    match cli.cmd {
        Cmd::Run(args) => cmd_run(args),
        Cmd::Check(args) => cmd_check(args),
        Cmd::DumpAst(args) => cmd_dump(args),
        Cmd::Repl => cmd_repl(),
    }
}

/// Reads the program text for `run`/`dump-ast`: inline text, a file, or
/// standard input for `-`.
fn load_source(file: &Option<PathBuf>, expr: &Option<String>) -> Result<String, String> {
    match (file, expr) {
        (None, Some(text)) => Ok(text.clone()),
        (Some(_), Some(_)) => Err("give a file or --expr, not both".into()),
        (None, None) => Err("no program: give a file or --expr".into()),
        (Some(path), None) if path.as_os_str() == "-" => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| format!("reading standard input: {e}"))?;
            Ok(text)
        }
        (Some(path), None) => {
            std::fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()))
        }
    }
}

/// Parses `d:3,t:1` into dimension bindings.
fn parse_ctx_arg(text: &str) -> Result<Vec<(String, i64)>, String> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (dim, tag) = part
            .split_once(':')
            .ok_or_else(|| format!("bad context binding `{part}`: want dim:tag"))?;
        let tag: i64 = tag
            .trim()
            .parse()
            .map_err(|_| format!("bad tag in `{part}`: want an integer"))?;
        out.push((dim.trim().to_string(), tag));
    }
    Ok(out)
}

/// Parses the inclusive `LO..HI` window form.
fn parse_window_arg(text: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| format!("bad window `{text}`: want LO..HI"))?;
    let lo: i64 = lo
        .trim()
        .parse()
        .map_err(|_| format!("bad window start in `{text}`"))?;
    let hi: i64 = hi
        .trim()
        .parse()
        .map_err(|_| format!("bad window end in `{text}`"))?;
    if lo > hi {
        return Err(format!("empty window `{text}`: start is past end"));
    }
    Ok((lo, hi))
}

fn usage_error(msg: &str) -> u8 {
    eprintln!("error: {msg}");
    EXIT_USAGE
}

/// Makes `name` a session-level dimension so `--ctx` and `--stream` can
/// use dimensions the program itself never declares.
fn ensure_dimension(session: &mut EvalSession, name: &str) -> Result<(), String> {
    if session.base_context().get(name).is_some() {
        return Ok(());
    }
    if session.taken_names().contains(name) {
        return Err(format!("`{name}` is already bound, and not as a dimension"));
    }
    session.define(&QDef::DimDecl(name.to_string()));
    Ok(())
}

/// Writes to standard output without panicking when the reader has gone
/// away (`flucid check | head`); returns false once the pipe is closed.
fn emit(text: &str) -> bool {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .is_ok()
}

fn dump_trace(session: &EvalSession, format: TraceFormat) {
    let rendered = match format {
        TraceFormat::Text => explain(session.trace()),
        TraceFormat::Json => explain_json(session.trace()),
    };
    eprint!("{rendered}");
    if !rendered.ends_with('\n') {
        eprintln!();
    }
}

fn cmd_run(args: RunArgs) -> u8 {
    let src = match load_source(&args.file, &args.expr) {
        Ok(s) => s,
        Err(msg) => return usage_error(&msg),
    };
    let ast = match parse(&src) {
        Ok(e) => e,
        Err(e) => return usage_error(&format!("parse error: {e}")),
    };

    let mut session = EvalSession::new();
    if let Some(n) = args.depth.or_else(|| env_limit("FLUCID_DEPTH")) {
        session.set_depth_limit(n);
    }
    if let Some(n) = args.steps.or_else(|| env_limit("FLUCID_STEPS")) {
        session.set_step_limit(n);
    }
    session.set_cache(!args.no_cache);
    session.set_tracing(args.trace.is_some());

    let bindings = match args.ctx.as_deref().map(parse_ctx_arg).transpose() {
        Ok(b) => b.unwrap_or_default(),
        Err(msg) => return usage_error(&msg),
    };
    for (dim, _) in &bindings {
        if let Err(msg) = ensure_dimension(&mut session, dim) {
            return usage_error(&msg);
        }
    }
    if let Some(dim) = &args.stream {
        if let Err(msg) = ensure_dimension(&mut session, dim) {
            return usage_error(&msg);
        }
    }

    let core = match desugar(&ast, &session.taken_names()) {
        Ok(e) => e,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_FAIL;
        }
    };

    let mut ctx = session.base_context();
    for (dim, tag) in &bindings {
        ctx = ctx.bind(dim, *tag);
    }

    let outcome: Result<String, _> = if let Some(range) = &args.window {
        let (lo, hi) = match parse_window_arg(range) {
            Ok(r) => r,
            Err(msg) => return usage_error(&msg),
        };
        let dim = args.stream.as_deref().unwrap_or(DEFAULT_DIM);
        session.eval_window(&core, dim, lo, hi, &ctx).map(|vals| {
            let words: Vec<String> = vals.iter().map(|v| v.to_string()).collect();
            words.join(" ")
        })
    } else if let Some(dim) = &args.stream {
        session.eval_stream(&core, dim, &ctx).map(|s| {
            let mut line = s.to_string();
            let mut notes = Vec::new();
            if s.lead() > 0 {
                notes.push(format!("lead {}", s.lead()));
            }
            if s.trailing() == flucid::Marker::Bod {
                notes.push("ends bod".to_string());
            }
            if !notes.is_empty() {
                line.push_str(&format!("  ({})", notes.join(", ")));
            }
            line
        })
    } else {
        session.eval(&core, &ctx).map(|v| v.to_string())
    };

    if let Some(format) = args.trace {
        dump_trace(&session, format);
    }
    match outcome {
        Ok(line) => {
            emit(&format!("{line}\n"));
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_FAIL
        }
    }
}

fn cmd_check(args: CheckArgs) -> u8 {
    let reports: Vec<Report> = match args.only {
        None => harness::check_all(args.seed, args.cases),
        Some(Suite::Table1) => vec![harness::table1::check_table1()],
        Some(Suite::Axioms) => vec![harness::axioms::check_axioms(args.seed, args.cases)],
        Some(Suite::Propositions) => {
            vec![harness::propositions::check_propositions(
                args.seed, args.cases,
            )]
        }
        Some(Suite::Lemmas) => vec![harness::lemmas::check_lemmas(args.seed, args.cases)],
    };
    let mut failed = 0;
    let mut text = String::new();
    for (i, report) in reports.iter().enumerate() {
        if i > 0 {
            text.push('\n');
        }
        text.push_str(&report.to_string());
        failed += report.failed_count();
    }
    emit(&text);
    if failed > 0 {
        eprintln!("error: {failed} properties failed");
        EXIT_FAIL
    } else {
        0
    }
}

fn cmd_dump(args: DumpArgs) -> u8 {
    let src = match load_source(&args.file, &args.expr) {
        Ok(s) => s,
        Err(msg) => return usage_error(&msg),
    };
    let ast = match parse(&src) {
        Ok(e) => e,
        Err(e) => return usage_error(&format!("parse error: {e}")),
    };
    let shown = if args.desugared {
        let taken = EvalSession::new().taken_names();
        match desugar(&ast, &taken) {
            Ok(e) => e,
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_FAIL;
            }
        }
    } else {
        ast
    };
    emit(&tree::render(&shown));
    0
}

const REPL_HELP: &str = "\
commands:
  :q            leave
  :ctx          show the evaluation context
  :ctx d:3,t:1  move the evaluation context
  :trace on|off print rule traces for each result
  :cache on|off use or skip the (identifier, context) memo
  :help         this list
anything else is a definition (x = ...; dimension t;) or an expression";

fn cmd_repl() -> u8 {
    let interactive = std::io::stdin().is_terminal();
    if interactive {
        eprintln!("flucid repl; :help lists commands");
    }
    let mut session = EvalSession::new();
    let mut overlay: Vec<(String, i64)> = Vec::new();
    let mut trace_on = false;

    let stdin = std::io::stdin();
    let mut lines = stdin.lock().lines();
    loop {
        if interactive {
            eprint!("> ");
            let _ = std::io::stderr().flush();
        }
        let line = match lines.next() {
            Some(Ok(l)) => l,
            Some(Err(_)) | None => break,
        };
        let line = line.trim();
        if line.is_empty() || line.starts_with("//") {
            continue;
        }
        if let Some(rest) = line.strip_prefix(':') {
            if repl_command(rest, &mut session, &mut overlay, &mut trace_on) {
                break;
            }
            continue;
        }
        repl_line(line, &mut session, &overlay, trace_on);
    }
    0
}

/// Handles one `:command`; returns true when the session should end.
fn repl_command(
    rest: &str,
    session: &mut EvalSession,
    overlay: &mut Vec<(String, i64)>,
    trace_on: &mut bool,
) -> bool {
    let (cmd, arg) = match rest.split_once(char::is_whitespace) {
        Some((c, a)) => (c, a.trim()),
        None => (rest, ""),
    };
    match cmd {
        "q" | "quit" => return true,
        "help" => eprintln!("{REPL_HELP}"),
        "ctx" => {
            if arg.is_empty() {
                emit(&format!("{}\n", repl_context(session, overlay)));
            } else {
                match parse_ctx_arg(arg) {
                    Ok(bindings) => {
                        for (dim, tag) in bindings {
                            match ensure_dimension(session, &dim) {
                                Ok(()) => overlay.push((dim, tag)),
                                Err(msg) => eprintln!("error: {msg}"),
                            }
                        }
                    }
                    Err(msg) => eprintln!("error: {msg}"),
                }
            }
        }
        "trace" => match arg {
            "on" => {
                *trace_on = true;
                session.set_tracing(true);
            }
            "off" => {
                *trace_on = false;
                session.set_tracing(false);
            }
            _ => eprintln!("error: :trace wants on or off"),
        },
        "cache" => match arg {
            "on" => session.set_cache(true),
            "off" => session.set_cache(false),
            _ => eprintln!("error: :cache wants on or off"),
        },
        _ => eprintln!("error: unknown command :{cmd}; :help lists commands"),
    }
    false
}

fn repl_context(session: &EvalSession, overlay: &[(String, i64)]) -> Context {
    let mut ctx = session.base_context();
    for (dim, tag) in overlay {
        ctx = ctx.bind(dim, *tag);
    }
    ctx
}

fn repl_line(line: &str, session: &mut EvalSession, overlay: &[(String, i64)], trace_on: bool) {
    let item = match parse_line(line) {
        Ok(item) => item,
        Err(e) => {
            eprintln!("error: parse error: {e}");
            return;
        }
    };
    match item {
        LineItem::Def(def) => {
            // The new name may not shadow the binders the rewrite invents.
            let mut taken: HashSet<String> = session.taken_names();
            taken.insert(def.name().to_string());
            match desugar_def(&def, &taken) {
                Ok(core) => {
                    let name = core.name().to_string();
                    session.define(&core);
                    eprintln!("{name} defined");
                }
                Err(e) => eprintln!("error: {e}"),
            }
        }
        LineItem::Expr(ast) => {
            let core = match desugar(&ast, &session.taken_names()) {
                Ok(e) => e,
                Err(e) => {
                    eprintln!("error: {e}");
                    return;
                }
            };
            let ctx = repl_context(session, overlay);
            match session.eval(&core, &ctx) {
                Ok(v) => {
                    if trace_on {
                        dump_trace(session, TraceFormat::Text);
                    }
                    emit(&format!("{v}\n"));
                }
                Err(e) => {
                    if trace_on {
                        dump_trace(session, TraceFormat::Text);
                    }
                    eprintln!("error: {e}");
                }
            }
        }
    }
}
