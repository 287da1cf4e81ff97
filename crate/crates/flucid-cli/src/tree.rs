//! Indented line-tree rendering of the syntax for `dump-ast`.

use flucid::syntax::{Expr, QDef};

pub fn render(e: &Expr) -> String {
    let mut out = String::new();
    expr(e, 0, &mut out);
    out
}

fn line(out: &mut String, depth: usize, label: &str) {
    for _ in 0..depth {
        out.push_str("  ");
    }
    out.push_str(label);
    out.push('\n');
}

fn suffixed(name: &str, dim: &Option<String>) -> String {
    match dim {
        Some(d) => format!("{name}.{d}"),
        None => name.to_string(),
    }
}

fn expr(e: &Expr, depth: usize, out: &mut String) {
    match e {
        Expr::Id(n) => line(out, depth, &format!("id {n}")),
        Expr::IntLit(k) => line(out, depth, &format!("int {k}")),
        Expr::BoolLit(true) => line(out, depth, "bool T"),
        Expr::BoolLit(false) => line(out, depth, "bool F"),
        Expr::Apply(callee, args) => {
            line(out, depth, "apply");
            expr(callee, depth + 1, out);
            for a in args {
                expr(a, depth + 1, out);
            }
        }
        Expr::If(c, t, f) => {
            line(out, depth, "if");
            expr(c, depth + 1, out);
            expr(t, depth + 1, out);
            expr(f, depth + 1, out);
        }
        Expr::Hash(None) => line(out, depth, "hash"),
        Expr::Hash(Some(d)) => {
            line(out, depth, "hash");
            expr(d, depth + 1, out);
        }
        Expr::AtDim(x, d, t) => {
            line(out, depth, "at-dim");
            expr(x, depth + 1, out);
            expr(d, depth + 1, out);
            expr(t, depth + 1, out);
        }
        Expr::AtCtx(x, c) => {
            line(out, depth, "at-ctx");
            expr(x, depth + 1, out);
            expr(c, depth + 1, out);
        }
        Expr::CtxLit(pairs) => {
            line(out, depth, "context");
            for (d, t) in pairs {
                line(out, depth + 1, "entry");
                expr(d, depth + 2, out);
                expr(t, depth + 2, out);
            }
        }
        Expr::CtxSetLit(members) => {
            line(out, depth, "context-set");
            for m in members {
                expr(m, depth + 1, out);
            }
        }
        Expr::Where(head, defs) => {
            line(out, depth, "where");
            expr(head, depth + 1, out);
            for d in defs {
                def(d, depth + 1, out);
            }
        }
        Expr::UnOp(kind, dim, x) => {
            line(out, depth, &format!("unop {}", suffixed(kind.name(), dim)));
            expr(x, depth + 1, out);
        }
        Expr::BinOp(kind, dim, l, r) => {
            line(out, depth, &format!("binop {}", suffixed(kind.name(), dim)));
            expr(l, depth + 1, out);
            expr(r, depth + 1, out);
        }
        Expr::Dot(base, name) => {
            line(out, depth, &format!("dot .{name}"));
            expr(base, depth + 1, out);
        }
    }
}

fn def(d: &QDef, depth: usize, out: &mut String) {
    match d {
        QDef::DimDecl(n) => line(out, depth, &format!("dimension {n}")),
        QDef::VarDef(n, body) => {
            line(out, depth, &format!("def {n}"));
            expr(body, depth + 1, out);
        }
        QDef::FuncDef(n, params, body) => {
            line(out, depth, &format!("def {n}({})", params.join(", ")));
            expr(body, depth + 1, out);
        }
    }
}
