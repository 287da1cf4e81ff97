//! Whole-pipeline target: parse, desugar, and evaluate under tight resource
//! limits. Every outcome short of a panic or runaway is acceptable.

#![no_main]

use flucid::syntax::{desugar, parse};
use flucid::EvalSession;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(ast) = parse(text) else {
        return;
    };
    let mut session = EvalSession::new();
    session.set_depth_limit(128);
    session.set_step_limit(20_000);
    let Ok(core) = desugar(&ast, &session.taken_names()) else {
        return;
    };
    let ctx = session.base_context();
    let _ = session.eval(&core, &ctx);
});
