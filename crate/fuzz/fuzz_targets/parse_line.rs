//! The interactive line grammar: definitions and expressions both round-trip
//! through their printed forms.

#![no_main]

use flucid::syntax::printer::print_def_line;
use flucid::syntax::{parse, parse_line, print, LineItem};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    match parse_line(text) {
        Ok(LineItem::Def(def)) => {
            let printed = print_def_line(&def);
            match parse_line(&printed) {
                Ok(LineItem::Def(back)) => assert_eq!(back, def, "def round trip\n{printed}"),
                other => panic!("printed def `{printed}` came back as {other:?}"),
            }
        }
        Ok(LineItem::Expr(e)) => {
            let printed = print(&e);
            let back = parse(&printed)
                .unwrap_or_else(|err| panic!("printed form failed to parse: {err}\n{printed}"));
            assert_eq!(back, e, "expr round trip\n{printed}");
        }
        Err(_) => {}
    }
});
