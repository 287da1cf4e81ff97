//! Single-line printer. Parentheses are emitted only where the parse
//! would otherwise differ, so `parse(print(e)) == e` for every
//! well-formed tree.

use std::fmt::Write;

use super::ast::{BinOpKind, Expr, QDef};

/// The precedence level a node produces; a child is parenthesized when
/// its level is below the level its position requires.
fn level(e: &Expr) -> u8 {
    match e {
        Expr::Where(..) => 0,
        Expr::AtDim(..) | Expr::AtCtx(..) => 1,
        Expr::BinOp(k, ..) if k.is_prepend() => 2,
        Expr::BinOp(k, ..) if k.is_filter() => 3,
        Expr::BinOp(BinOpKind::Or | BinOpKind::Xor, ..) => 4,
        Expr::BinOp(BinOpKind::And, ..) => 5,
        Expr::UnOp(k, ..) if !k.is_stream() => 6,
        Expr::BinOp(k, ..) if k.is_comparison() => 7,
        Expr::BinOp(BinOpKind::Add | BinOpKind::Sub, ..) => 8,
        Expr::BinOp(..) => 9,
        Expr::UnOp(..) => 10,
        _ => 11,
    }
}

fn binop_child_levels(k: BinOpKind) -> (u8, u8) {
    match k {
        _ if k.is_prepend() => (3, 2),
        _ if k.is_filter() => (3, 4),
        BinOpKind::Or | BinOpKind::Xor => (4, 5),
        BinOpKind::And => (5, 6),
        _ if k.is_comparison() => (7, 8),
        BinOpKind::Add | BinOpKind::Sub => (8, 9),
        _ => (9, 10),
    }
}

fn suffix(out: &mut String, sfx: &Option<String>) {
    if let Some(d) = sfx {
        out.push('.');
        out.push_str(d);
    }
}

fn go(e: &Expr, min: u8, out: &mut String) {
    let parens = level(e) < min;
    if parens {
        out.push('(');
    }
    match e {
        Expr::Id(n) => out.push_str(n),
        Expr::IntLit(v) => {
            let _ = write!(out, "{v}");
        }
        Expr::BoolLit(b) => out.push_str(if *b { "true" } else { "false" }),
        Expr::Apply(f, args) => {
            go(f, 11, out);
            out.push('(');
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                go(a, 0, out);
            }
            out.push(')');
        }
        Expr::If(c, t, f) => {
            out.push_str("if ");
            go(c, 0, out);
            out.push_str(" then ");
            go(t, 0, out);
            out.push_str(" else ");
            go(f, 0, out);
            out.push_str(" fi");
        }
        Expr::Hash(None) => out.push('#'),
        Expr::Hash(Some(d)) => {
            out.push_str("#.");
            go(d, 11, out);
        }
        Expr::AtDim(x, d, t) => {
            go(x, 1, out);
            out.push_str(" @.");
            go(d, 11, out);
            out.push(' ');
            go(t, 2, out);
        }
        Expr::AtCtx(x, c) => {
            go(x, 1, out);
            out.push_str(" @ ");
            go(c, 2, out);
        }
        Expr::CtxLit(entries) => {
            out.push('[');
            for (i, (d, t)) in entries.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                go(d, 0, out);
                out.push(':');
                go(t, 0, out);
            }
            out.push(']');
        }
        Expr::CtxSetLit(members) => {
            out.push('{');
            for (i, m) in members.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                go(m, 0, out);
            }
            out.push('}');
        }
        Expr::Where(head, defs) => {
            go(head, 0, out);
            out.push_str(" where");
            for d in defs {
                out.push(' ');
                print_def(d, out);
            }
            out.push_str(" end");
        }
        Expr::UnOp(k, sfx, x) => {
            out.push_str(k.name());
            suffix(out, sfx);
            out.push(' ');
            go(x, if k.is_stream() { 10 } else { 6 }, out);
        }
        Expr::BinOp(k, sfx, l, r) => {
            let (ll, rl) = binop_child_levels(*k);
            go(l, ll, out);
            out.push(' ');
            out.push_str(k.name());
            suffix(out, sfx);
            out.push(' ');
            go(r, rl, out);
        }
        Expr::Dot(x, n) => {
            go(x, 11, out);
            out.push('.');
            out.push_str(n);
        }
    }
    if parens {
        out.push(')');
    }
}

fn print_def(d: &QDef, out: &mut String) {
    match d {
        QDef::DimDecl(n) => {
            let _ = write!(out, "dimension {n};");
        }
        QDef::VarDef(n, e) => {
            let _ = write!(out, "{n} = ");
            go(e, 0, out);
            out.push(';');
        }
        QDef::FuncDef(n, params, e) => {
            let _ = write!(out, "{n}({}) = ", params.join(", "));
            go(e, 0, out);
            out.push(';');
        }
    }
}

pub fn print(e: &Expr) -> String {
    let mut out = String::new();
    go(e, 0, &mut out);
    out
}

pub fn print_def_line(d: &QDef) -> String {
    let mut out = String::new();
    print_def(d, &mut out);
    out
}

impl std::fmt::Display for Expr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&print(self))
    }
}

impl std::fmt::Display for QDef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&print_def_line(self))
    }
}
