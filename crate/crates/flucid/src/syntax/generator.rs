//! Seeded random AST generation for round-trip and robustness checks.
//!
//! Every generated tree is well-formed for the printer and the parser:
//! identifiers avoid keywords, dimension positions hold name paths,
//! suffixes appear only on operators that accept them, and application
//! heads are plain names. Values or types need not make sense; the
//! round-trip property is purely syntactic.

use rand::seq::SliceRandom;
use rand::Rng;

use super::ast::{BinOpKind, Expr, QDef, UnOpKind};

const NAMES: &[&str] = &["a", "b", "c", "x", "y", "z", "n", "m", "p", "q", "r", "w"];
const FUNCS: &[&str] = &["f", "g", "h"];
const DIMS: &[&str] = &["d", "t", "s", "e"];

const UNOPS: &[UnOpKind] = &[
    UnOpKind::Neg,
    UnOpKind::Not,
    UnOpKind::First,
    UnOpKind::Second,
    UnOpKind::Last,
    UnOpKind::Prelast,
    UnOpKind::Next,
    UnOpKind::Prev,
    UnOpKind::IsEod,
    UnOpKind::IsBod,
];

const BINOPS: &[BinOpKind] = &[
    BinOpKind::Fby,
    BinOpKind::Pby,
    BinOpKind::Wvr,
    BinOpKind::Rwvr,
    BinOpKind::Nwvr,
    BinOpKind::Nrwvr,
    BinOpKind::Asa,
    BinOpKind::Nasa,
    BinOpKind::Ala,
    BinOpKind::Nala,
    BinOpKind::Upon,
    BinOpKind::Rupon,
    BinOpKind::Nupon,
    BinOpKind::Nrupon,
    BinOpKind::And,
    BinOpKind::Or,
    BinOpKind::Xor,
    BinOpKind::Add,
    BinOpKind::Sub,
    BinOpKind::Mul,
    BinOpKind::Div,
    BinOpKind::Mod,
    BinOpKind::Eq,
    BinOpKind::Ne,
    BinOpKind::Lt,
    BinOpKind::Le,
    BinOpKind::Gt,
    BinOpKind::Ge,
];

fn name(rng: &mut impl Rng) -> String {
    (*NAMES.choose(rng).unwrap()).to_owned()
}

/// A dimension position: a plain name or a two-step path.
fn dim_path(rng: &mut impl Rng) -> Expr {
    let head = (*DIMS.choose(rng).unwrap()).to_owned();
    if rng.gen_ratio(1, 5) {
        Expr::Dot(
            Box::new(Expr::Id(head)),
            (*DIMS.choose(rng).unwrap()).to_owned(),
        )
    } else {
        Expr::Id(head)
    }
}

fn suffix(rng: &mut impl Rng) -> Option<String> {
    if rng.gen_ratio(3, 5) {
        let mut s = (*DIMS.choose(rng).unwrap()).to_owned();
        if rng.gen_ratio(1, 8) {
            s.push('.');
            s.push_str(DIMS.choose(rng).unwrap());
        }
        Some(s)
    } else {
        None
    }
}

fn leaf(rng: &mut impl Rng) -> Expr {
    match rng.gen_range(0..6) {
        0 => Expr::IntLit(rng.gen_range(0..100)),
        1 => Expr::BoolLit(rng.gen_bool(0.5)),
        2 => Expr::Hash(None),
        3 => Expr::Hash(Some(Box::new(dim_path(rng)))),
        _ => Expr::Id(name(rng)),
    }
}

/// A random expression of nesting depth at most `depth`.
pub fn gen_expr(rng: &mut impl Rng, depth: usize) -> Expr {
    if depth == 0 {
        return leaf(rng);
    }
    let d = depth - 1;
    match rng.gen_range(0..20) {
        0..=6 => {
            let k = *BINOPS.choose(rng).unwrap();
            let sfx = if k.takes_suffix() { suffix(rng) } else { None };
            Expr::BinOp(
                k,
                sfx,
                Box::new(gen_expr(rng, d)),
                Box::new(gen_expr(rng, d)),
            )
        }
        7..=9 => {
            let k = *UNOPS.choose(rng).unwrap();
            let sfx = if k.takes_suffix() { suffix(rng) } else { None };
            Expr::UnOp(k, sfx, Box::new(gen_expr(rng, d)))
        }
        10 => Expr::If(
            Box::new(gen_expr(rng, d)),
            Box::new(gen_expr(rng, d)),
            Box::new(gen_expr(rng, d)),
        ),
        11 | 12 => Expr::AtDim(
            Box::new(gen_expr(rng, d)),
            Box::new(dim_path(rng)),
            Box::new(gen_expr(rng, d)),
        ),
        13 => Expr::AtCtx(Box::new(gen_expr(rng, d)), Box::new(gen_expr(rng, d))),
        14 => {
            let n = rng.gen_range(0..3);
            Expr::CtxLit((0..n).map(|_| (dim_path(rng), gen_expr(rng, d))).collect())
        }
        15 => {
            let n = rng.gen_range(1..3);
            Expr::CtxSetLit((0..n).map(|_| gen_expr(rng, d)).collect())
        }
        16 => {
            let callee = (*FUNCS.choose(rng).unwrap()).to_owned();
            let n = rng.gen_range(1..4);
            Expr::Apply(
                Box::new(Expr::Id(callee)),
                (0..n).map(|_| gen_expr(rng, d)).collect(),
            )
        }
        17 => Expr::Dot(Box::new(Expr::Id(name(rng))), name(rng)),
        _ => {
            let n = rng.gen_range(1..4);
            Expr::Where(
                Box::new(gen_expr(rng, d)),
                (0..n).map(|_| gen_def(rng, d)).collect(),
            )
        }
    }
}

pub fn gen_def(rng: &mut impl Rng, depth: usize) -> QDef {
    match rng.gen_range(0..5) {
        0 => {
            let mut n = (*DIMS.choose(rng).unwrap()).to_owned();
            if rng.gen_ratio(1, 6) {
                n.push('.');
                n.push_str(DIMS.choose(rng).unwrap());
            }
            QDef::DimDecl(n)
        }
        1 => {
            let fname = (*FUNCS.choose(rng).unwrap()).to_owned();
            let n = rng.gen_range(1..4);
            let mut params: Vec<String> = Vec::new();
            while params.len() < n {
                let p = name(rng);
                if !params.contains(&p) {
                    params.push(p);
                }
            }
            QDef::FuncDef(fname, params, gen_expr(rng, depth))
        }
        _ => QDef::VarDef(name(rng), gen_expr(rng, depth)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parser::parse;
    use crate::syntax::printer::print;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn deterministic_for_a_seed() {
        let a = gen_expr(&mut ChaCha8Rng::seed_from_u64(7), 4);
        let b = gen_expr(&mut ChaCha8Rng::seed_from_u64(7), 4);
        assert_eq!(a, b);
        let c = gen_expr(&mut ChaCha8Rng::seed_from_u64(8), 4);
        assert_ne!(print(&a), print(&c));
    }

    #[test]
    fn sampled_trees_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for i in 0..50 {
            let e = gen_expr(&mut rng, 4);
            let text = print(&e);
            let back = parse(&text).unwrap_or_else(|err| panic!("case {i}: {err}\n{text}"));
            assert_eq!(back, e, "case {i}: {text}");
        }
    }
}
