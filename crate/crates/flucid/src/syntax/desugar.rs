//! Reduction to the core evaluator language.
//!
//! `second` and `prelast` expand into `first next` and `last prev`. Every
//! binder introduced by a `where` clause or a parameter list is then given
//! a name that is unique across the unit (first occurrences keep their
//! spelling, later ones become `x_2`, `x_3`, ...). Uniqueness is what
//! makes call-by-name substitution capture-free and keeps the value cache
//! keyed by plain `(name, context)` sound across sibling scopes. Dotted
//! dimension names are treated as atoms and never renamed.
//!
//! The pass is idempotent: desugaring an already desugared tree changes
//! nothing.

use std::collections::{HashMap, HashSet};

use super::ast::{Expr, QDef, UnOpKind};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DesugarError {
    #[error("`{0}` is defined twice in the same scope")]
    Duplicate(String),
    #[error("function `{0}` refers to itself")]
    SelfReference(String),
}

/// Desugars a complete expression. `taken` holds names already bound
/// outside it (the ambient environment, earlier interactive definitions).
pub fn desugar(e: &Expr, taken: &HashSet<String>) -> Result<Expr, DesugarError> {
    let mut st = Renamer::new(e, taken);
    st.expr(e, &mut Vec::new())
}

/// Desugars one interactive definition. The defined name itself is kept;
/// only binders inside the body are renamed.
pub fn desugar_def(d: &QDef, taken: &HashSet<String>) -> Result<QDef, DesugarError> {
    match d {
        QDef::DimDecl(n) => Ok(QDef::DimDecl(n.clone())),
        QDef::VarDef(n, body) => {
            let mut taken = taken.clone();
            taken.insert(n.clone());
            Ok(QDef::VarDef(n.clone(), desugar(body, &taken)?))
        }
        QDef::FuncDef(n, params, body) => {
            check_distinct(params.iter())?;
            let mut taken = taken.clone();
            taken.insert(n.clone());
            let probe = Expr::Where(
                Box::new(Expr::BoolLit(true)),
                vec![QDef::FuncDef(n.clone(), params.clone(), body.clone())],
            );
            let mut st = Renamer::new(&probe, &taken);
            // reuse the scoped walk, but pin the function name itself
            let mut scope = vec![HashMap::from([(n.clone(), n.clone())])];
            st.used.insert(n.clone());
            let (params, body) = st.func(n, params, body, &mut scope)?;
            Ok(QDef::FuncDef(n.clone(), params, body))
        }
    }
}

fn check_distinct<'a>(names: impl Iterator<Item = &'a String>) -> Result<(), DesugarError> {
    let mut seen = HashSet::new();
    for n in names {
        if !seen.insert(n.as_str()) {
            return Err(DesugarError::Duplicate(n.clone()));
        }
    }
    Ok(())
}

struct Renamer {
    /// Names that renamed binders must avoid: ambient names, free names,
    /// and every binder processed so far.
    used: HashSet<String>,
    /// Every identifier spelled anywhere in the unit; fresh names avoid
    /// these too.
    occ: HashSet<String>,
}

type Scope = Vec<HashMap<String, String>>;

impl Renamer {
    fn new(unit: &Expr, taken: &HashSet<String>) -> Renamer {
        let mut occ = HashSet::new();
        collect_names(unit, &mut occ);
        let mut used = taken.clone();
        free_names(unit, &mut Vec::new(), &mut used);
        Renamer { used, occ }
    }

    fn bind(&mut self, name: &str, layer: &mut HashMap<String, String>) {
        let fresh = if self.used.contains(name) && !name.contains('.') {
            let mut k = 2u32;
            loop {
                let cand = format!("{name}_{k}");
                if !self.used.contains(&cand) && !self.occ.contains(&cand) {
                    break cand;
                }
                k += 1;
            }
        } else {
            name.to_owned()
        };
        self.used.insert(fresh.clone());
        self.occ.insert(fresh.clone());
        layer.insert(name.to_owned(), fresh);
    }

    fn resolve(&self, name: &str, scope: &Scope) -> String {
        for layer in scope.iter().rev() {
            if let Some(n) = layer.get(name) {
                return n.clone();
            }
        }
        name.to_owned()
    }

    fn dim_ref(&self, e: &Expr, scope: &Scope) -> Expr {
        match e {
            Expr::Id(n) => Expr::Id(self.resolve(n, scope)),
            Expr::Dot(head, child) => Expr::Dot(Box::new(self.dim_ref(head, scope)), child.clone()),
            other => other.clone(),
        }
    }

    fn suffix_ref(&self, sfx: &Option<String>, scope: &Scope) -> Option<String> {
        sfx.as_ref().map(|s| self.resolve(s, scope))
    }

    fn func(
        &mut self,
        name: &str,
        params: &[String],
        body: &Expr,
        scope: &mut Scope,
    ) -> Result<(Vec<String>, Expr), DesugarError> {
        let mut layer = HashMap::new();
        for p in params {
            self.bind(p, &mut layer);
        }
        let new_params: Vec<String> = params.iter().map(|p| layer[p].clone()).collect();
        scope.push(layer);
        let new_body = self.expr(body, scope);
        scope.pop();
        let new_body = new_body?;
        let fname = self.resolve(name, scope);
        if mentions(&new_body, &fname) {
            return Err(DesugarError::SelfReference(name.to_owned()));
        }
        Ok((new_params, new_body))
    }

    fn expr(&mut self, e: &Expr, scope: &mut Scope) -> Result<Expr, DesugarError> {
        Ok(match e {
            Expr::Id(n) => Expr::Id(self.resolve(n, scope)),
            Expr::IntLit(_) | Expr::BoolLit(_) => e.clone(),
            Expr::Apply(f, args) => {
                let f = self.expr(f, scope)?;
                let args = args
                    .iter()
                    .map(|a| self.expr(a, scope))
                    .collect::<Result<Vec<_>, _>>()?;
                Expr::Apply(Box::new(f), args)
            }
            Expr::If(c, t, f) => Expr::If(
                Box::new(self.expr(c, scope)?),
                Box::new(self.expr(t, scope)?),
                Box::new(self.expr(f, scope)?),
            ),
            Expr::Hash(d) => Expr::Hash(d.as_ref().map(|d| Box::new(self.dim_ref(d, scope)))),
            Expr::AtDim(x, d, t) => Expr::AtDim(
                Box::new(self.expr(x, scope)?),
                Box::new(self.dim_ref(d, scope)),
                Box::new(self.expr(t, scope)?),
            ),
            Expr::AtCtx(x, c) => Expr::AtCtx(
                Box::new(self.expr(x, scope)?),
                Box::new(self.expr(c, scope)?),
            ),
            Expr::CtxLit(entries) => Expr::CtxLit(
                entries
                    .iter()
                    .map(|(d, t)| Ok((self.dim_ref(d, scope), self.expr(t, scope)?)))
                    .collect::<Result<Vec<_>, DesugarError>>()?,
            ),
            Expr::CtxSetLit(members) => Expr::CtxSetLit(
                members
                    .iter()
                    .map(|m| self.expr(m, scope))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
            Expr::Where(head, defs) => {
                check_distinct(defs.iter().map(|d| match d {
                    QDef::DimDecl(n) | QDef::VarDef(n, _) | QDef::FuncDef(n, _, _) => n,
                }))?;
                let mut layer = HashMap::new();
                for d in defs {
                    self.bind(d.name(), &mut layer);
                }
                scope.push(layer);
                let result = (|| {
                    let mut new_defs = Vec::with_capacity(defs.len());
                    for d in defs {
                        let bound = self.resolve(d.name(), scope);
                        new_defs.push(match d {
                            QDef::DimDecl(_) => QDef::DimDecl(bound),
                            QDef::VarDef(_, body) => QDef::VarDef(bound, self.expr(body, scope)?),
                            QDef::FuncDef(n, params, body) => {
                                let (params, body) = self.func(n, params, body, scope)?;
                                QDef::FuncDef(bound, params, body)
                            }
                        });
                    }
                    let head = self.expr(head, scope)?;
                    Ok(Expr::Where(Box::new(head), new_defs))
                })();
                scope.pop();
                result?
            }
            Expr::UnOp(k, sfx, x) => {
                let sfx = self.suffix_ref(sfx, scope);
                let x = self.expr(x, scope)?;
                match k {
                    UnOpKind::Second => Expr::UnOp(
                        UnOpKind::First,
                        sfx.clone(),
                        Box::new(Expr::UnOp(UnOpKind::Next, sfx, Box::new(x))),
                    ),
                    UnOpKind::Prelast => Expr::UnOp(
                        UnOpKind::Last,
                        sfx.clone(),
                        Box::new(Expr::UnOp(UnOpKind::Prev, sfx, Box::new(x))),
                    ),
                    _ => Expr::UnOp(*k, sfx, Box::new(x)),
                }
            }
            Expr::BinOp(k, sfx, l, r) => Expr::BinOp(
                *k,
                self.suffix_ref(sfx, scope),
                Box::new(self.expr(l, scope)?),
                Box::new(self.expr(r, scope)?),
            ),
            Expr::Dot(head, child) => Expr::Dot(Box::new(self.expr(head, scope)?), child.clone()),
        })
    }
}

/// Does `name` occur as an identifier reference anywhere in `e`?
fn mentions(e: &Expr, name: &str) -> bool {
    match e {
        Expr::Id(n) => n == name,
        Expr::IntLit(_) | Expr::BoolLit(_) => false,
        Expr::Apply(f, args) => mentions(f, name) || args.iter().any(|a| mentions(a, name)),
        Expr::If(a, b, c) => mentions(a, name) || mentions(b, name) || mentions(c, name),
        Expr::Hash(d) => d.as_ref().is_some_and(|d| mentions(d, name)),
        Expr::AtDim(a, b, c) => mentions(a, name) || mentions(b, name) || mentions(c, name),
        Expr::AtCtx(a, b) => mentions(a, name) || mentions(b, name),
        Expr::CtxLit(es) => es
            .iter()
            .any(|(d, t)| mentions(d, name) || mentions(t, name)),
        Expr::CtxSetLit(ms) => ms.iter().any(|m| mentions(m, name)),
        Expr::Where(h, defs) => {
            mentions(h, name)
                || defs.iter().any(|d| match d {
                    QDef::DimDecl(_) => false,
                    QDef::VarDef(_, b) => mentions(b, name),
                    QDef::FuncDef(_, _, b) => mentions(b, name),
                })
        }
        Expr::UnOp(_, sfx, x) => sfx.as_deref() == Some(name) || mentions(x, name),
        Expr::BinOp(_, sfx, l, r) => {
            sfx.as_deref() == Some(name) || mentions(l, name) || mentions(r, name)
        }
        Expr::Dot(h, _) => mentions(h, name),
    }
}

fn collect_names(e: &Expr, out: &mut HashSet<String>) {
    let mut add = |s: &str| {
        out.insert(s.to_owned());
    };
    match e {
        Expr::Id(n) => add(n),
        Expr::IntLit(_) | Expr::BoolLit(_) => {}
        Expr::Apply(f, args) => {
            collect_names(f, out);
            for a in args {
                collect_names(a, out);
            }
        }
        Expr::If(a, b, c) => {
            collect_names(a, out);
            collect_names(b, out);
            collect_names(c, out);
        }
        Expr::Hash(d) => {
            if let Some(d) = d {
                collect_names(d, out);
            }
        }
        Expr::AtDim(a, b, c) => {
            collect_names(a, out);
            collect_names(b, out);
            collect_names(c, out);
        }
        Expr::AtCtx(a, b) => {
            collect_names(a, out);
            collect_names(b, out);
        }
        Expr::CtxLit(es) => {
            for (d, t) in es {
                collect_names(d, out);
                collect_names(t, out);
            }
        }
        Expr::CtxSetLit(ms) => {
            for m in ms {
                collect_names(m, out);
            }
        }
        Expr::Where(h, defs) => {
            collect_names(h, out);
            for d in defs {
                out.insert(d.name().to_owned());
                match d {
                    QDef::DimDecl(_) => {}
                    QDef::VarDef(_, b) => collect_names(b, out),
                    QDef::FuncDef(_, ps, b) => {
                        for p in ps {
                            out.insert(p.clone());
                        }
                        collect_names(b, out);
                    }
                }
            }
        }
        Expr::UnOp(_, sfx, x) => {
            if let Some(s) = sfx {
                out.insert(s.clone());
            }
            collect_names(x, out);
        }
        Expr::BinOp(_, sfx, l, r) => {
            if let Some(s) = sfx {
                out.insert(s.clone());
            }
            collect_names(l, out);
            collect_names(r, out);
        }
        Expr::Dot(h, child) => {
            collect_names(h, out);
            out.insert(child.clone());
        }
    }
}

/// Names referenced without a binding in scope.
fn free_names(e: &Expr, bound: &mut Vec<HashSet<String>>, out: &mut HashSet<String>) {
    let is_bound = |n: &str, bound: &Vec<HashSet<String>>| bound.iter().any(|l| l.contains(n));
    match e {
        Expr::Id(n) => {
            if !is_bound(n, bound) {
                out.insert(n.clone());
            }
        }
        Expr::IntLit(_) | Expr::BoolLit(_) => {}
        Expr::Apply(f, args) => {
            free_names(f, bound, out);
            for a in args {
                free_names(a, bound, out);
            }
        }
        Expr::If(a, b, c) => {
            free_names(a, bound, out);
            free_names(b, bound, out);
            free_names(c, bound, out);
        }
        Expr::Hash(d) => {
            if let Some(d) = d {
                free_names(d, bound, out);
            }
        }
        Expr::AtDim(a, b, c) => {
            free_names(a, bound, out);
            free_names(b, bound, out);
            free_names(c, bound, out);
        }
        Expr::AtCtx(a, b) => {
            free_names(a, bound, out);
            free_names(b, bound, out);
        }
        Expr::CtxLit(es) => {
            for (d, t) in es {
                free_names(d, bound, out);
                free_names(t, bound, out);
            }
        }
        Expr::CtxSetLit(ms) => {
            for m in ms {
                free_names(m, bound, out);
            }
        }
        Expr::Where(h, defs) => {
            let layer: HashSet<String> = defs.iter().map(|d| d.name().to_owned()).collect();
            bound.push(layer);
            free_names(h, bound, out);
            for d in defs {
                match d {
                    QDef::DimDecl(_) => {}
                    QDef::VarDef(_, b) => free_names(b, bound, out),
                    QDef::FuncDef(_, ps, b) => {
                        bound.push(ps.iter().cloned().collect());
                        free_names(b, bound, out);
                        bound.pop();
                    }
                }
            }
            bound.pop();
        }
        Expr::UnOp(_, sfx, x) => {
            if let Some(s) = sfx {
                if !is_bound(s, bound) {
                    out.insert(s.clone());
                }
            }
            free_names(x, bound, out);
        }
        Expr::BinOp(_, sfx, l, r) => {
            if let Some(s) = sfx {
                if !is_bound(s, bound) {
                    out.insert(s.clone());
                }
            }
            free_names(l, bound, out);
            free_names(r, bound, out);
        }
        Expr::Dot(h, _) => free_names(h, bound, out),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parser::parse;
    use crate::syntax::printer::print;

    fn ds(src: &str) -> String {
        let taken: HashSet<String> = ["d", "bod", "eod"].iter().map(|s| s.to_string()).collect();
        print(&desugar(&parse(src).unwrap(), &taken).unwrap())
    }

    #[test]
    fn expansions() {
        assert_eq!(ds("second.d x"), "first.d next.d x");
        assert_eq!(ds("prelast x"), "last prev x");
    }

    #[test]
    fn shadowing_binders_are_renamed() {
        assert_eq!(
            ds("x where dimension d; x = #.d; end"),
            "x where dimension d_2; x = #.d_2; end"
        );
        assert_eq!(
            ds("(y where y = 1; end) + (y where y = 2; end)"),
            "(y where y = 1; end) + (y_2 where y_2 = 2; end)"
        );
    }

    #[test]
    fn fresh_names_dodge_existing_spellings() {
        assert_eq!(
            ds("x_2 + (x where x = x_2; end) where x = 1; end"),
            "x_2 + (x_3 where x_3 = x_2; end) where x = 1; end"
        );
    }

    #[test]
    fn params_shadow_and_free_names_stay() {
        assert_eq!(
            ds("f(x) where f(a) = a + x; x = 3; end"),
            "f(x) where f(a) = a + x; x = 3; end"
        );
        assert_eq!(
            ds("f(1) where x = 5; f(x) = x + 1; end"),
            "f(1) where x = 5; f(x_2) = x_2 + 1; end"
        );
    }

    #[test]
    fn idempotent() {
        let taken: HashSet<String> = ["d"].iter().map(|s| s.to_string()).collect();
        for src in [
            "x where dimension d; x = #.d fby.d x; end",
            "second x + prelast y where x = 1; y = 2; end",
            "f(x) where x = 5; f(x) = x + 1; end",
        ] {
            let once = desugar(&parse(src).unwrap(), &taken).unwrap();
            let twice = desugar(&once, &taken).unwrap();
            assert_eq!(once, twice, "on {src}");
        }
    }

    #[test]
    fn duplicate_and_self_reference_errors() {
        let taken = HashSet::new();
        assert_eq!(
            desugar(&parse("x where y = 1; y = 2; end").unwrap(), &taken),
            Err(DesugarError::Duplicate("y".into()))
        );
        assert_eq!(
            desugar(&parse("f(1) where f(n) = f(n); end").unwrap(), &taken),
            Err(DesugarError::SelfReference("f".into()))
        );
        assert_eq!(
            desugar_def(
                &QDef::FuncDef("g".into(), vec!["n".into()], parse("g(n)").unwrap()),
                &taken
            ),
            Err(DesugarError::SelfReference("g".into()))
        );
    }
}
