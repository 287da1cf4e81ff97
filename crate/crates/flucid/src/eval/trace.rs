//! Evaluation traces: one entry per concluded rule, pushed in conclusion
//! order (premises before the judgment that used them).

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceEntry {
    pub rule: &'static str,
    pub expr: String,
    pub ctx: String,
    pub value: String,
}

/// `rule | expr | context | value`, one line per entry.
pub fn explain(entries: &[TraceEntry]) -> String {
    let mut out = String::new();
    for t in entries {
        out.push_str(&format!(
            "{} | {} | {} | {}\n",
            t.rule, t.expr, t.ctx, t.value
        ));
    }
    out
}

pub fn explain_json(entries: &[TraceEntry]) -> String {
    serde_json::to_string_pretty(entries).expect("trace entries serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats() {
        let e = vec![TraceEntry {
            rule: "E_cid",
            expr: "42".into(),
            ctx: "[d:0]".into(),
            value: "42".into(),
        }];
        assert_eq!(explain(&e), "E_cid | 42 | [d:0] | 42\n");
        let j: serde_json::Value = serde_json::from_str(&explain_json(&e)).unwrap();
        assert_eq!(j[0]["rule"], "E_cid");
    }
}
