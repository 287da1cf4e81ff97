//! Anything the parser accepts must print back to a form it parses to the
//! same tree, and the desugarer must not panic on it.

#![no_main]

use libfuzzer_sys::fuzz_target;
use std::collections::HashSet;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(ast) = flucid::syntax::parse(text) else {
        return;
    };
    let printed = flucid::syntax::print(&ast);
    let back = flucid::syntax::parse(&printed)
        .unwrap_or_else(|err| panic!("printed form failed to parse: {err}\n{printed}"));
    assert_eq!(back, ast, "print/parse round trip changed the tree");
    let _ = flucid::syntax::desugar(&ast, &HashSet::new());
});
