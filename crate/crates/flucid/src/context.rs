//! Evaluation contexts, definition environments, and context sets.

use crate::syntax::ast::Expr;
use crate::value::Value;
use std::collections::BTreeMap;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

/// An evaluation context: a partial map from dimension names to integer
/// tags. Override (`†`) is right-biased.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Context {
    bindings: BTreeMap<String, i64>,
}

/// Error for querying a dimension the context does not bind. Distinct from
/// tag 0.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("dimension `{0}` is not bound in the current context")]
pub struct UnboundDimension(pub String);

impl Context {
    pub fn empty() -> Self {
        Context::default()
    }

    pub fn from_pairs<S: Into<String>>(pairs: impl IntoIterator<Item = (S, i64)>) -> Self {
        Context {
            bindings: pairs.into_iter().map(|(d, t)| (d.into(), t)).collect(),
        }
    }

    /// `self † [d ↦ tag]`.
    pub fn bind(&self, d: &str, tag: i64) -> Self {
        let mut b = self.bindings.clone();
        b.insert(d.to_string(), tag);
        Context { bindings: b }
    }

    /// `self † other`: union of bindings, `other` winning conflicts.
    pub fn override_with(&self, other: &Context) -> Self {
        let mut b = self.bindings.clone();
        for (d, t) in &other.bindings {
            b.insert(d.clone(), *t);
        }
        Context { bindings: b }
    }

    /// The tag of `d`; querying an unbound dimension is an error.
    pub fn query(&self, d: &str) -> Result<i64, UnboundDimension> {
        self.bindings
            .get(d)
            .copied()
            .ok_or_else(|| UnboundDimension(d.to_string()))
    }

    pub fn get(&self, d: &str) -> Option<i64> {
        self.bindings.get(d).copied()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &i64)> {
        self.bindings.iter()
    }
}

/// Sequential override from the empty base context: later pairs win.
pub fn construct_context<S: Into<String>>(pairs: impl IntoIterator<Item = (S, i64)>) -> Context {
    let mut c = Context::empty();
    for (d, t) in pairs {
        c = c.bind(&d.into(), t);
    }
    c
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (d, t)) in self.bindings.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{d}:{t}")?;
        }
        write!(f, "]")
    }
}

/// An ordered collection of contexts, produced by the context-set sugar
/// `{[..], [..]}`. Order is preserved; equality of members is structural.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ContextSet {
    contexts: Vec<Context>,
}

impl ContextSet {
    pub fn new(contexts: Vec<Context>) -> Self {
        ContextSet { contexts }
    }

    pub fn contexts(&self) -> &[Context] {
        &self.contexts
    }

    pub fn len(&self) -> usize {
        self.contexts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.contexts.is_empty()
    }

    /// Order-preserving union: members of `other` not already present are
    /// appended.
    pub fn union(&self, other: &ContextSet) -> ContextSet {
        let mut out = self.dedup();
        for c in &other.contexts {
            if !out.contexts.contains(c) {
                out.contexts.push(c.clone());
            }
        }
        out
    }

    /// Order-preserving intersection.
    pub fn intersection(&self, other: &ContextSet) -> ContextSet {
        let mut out = Vec::new();
        for c in &self.dedup().contexts {
            if other.contexts.contains(c) && !out.contains(c) {
                out.push(c.clone());
            }
        }
        ContextSet::new(out)
    }

    fn dedup(&self) -> ContextSet {
        let mut out: Vec<Context> = Vec::new();
        for c in &self.contexts {
            if !out.contains(c) {
                out.push(c.clone());
            }
        }
        ContextSet::new(out)
    }
}

impl fmt::Display for ContextSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.contexts.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

/// Builtin operator tags registered in the initial definition environment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinTag {
    /// `seq(e1, ..., en)`: construct an observation sequence.
    Seq,
    /// `combine(s, e)`: append observation `e` to every run of `s`.
    Combine,
    /// `product(s1, s2)`: all pairwise run concatenations, second-major.
    Product,
    /// `union(c1, c2)`: order-preserving union of context sets.
    Union,
    /// `intersect(c1, c2)`: order-preserving intersection of context sets.
    Intersect,
}

/// One entry of the definition environment. Exactly five kinds: dimensions,
/// constants, builtin operators, variables, and (non-recursive) functions.
#[derive(Debug, Clone)]
pub enum IdEntry {
    Dim,
    Const(Value),
    Op(BuiltinTag),
    Var(Rc<Expr>),
    Func(Rc<Vec<String>>, Rc<Expr>),
}

/// The definition environment: identifier → entry. Scope extension clones;
/// name uniqueness across scopes is the desugarer's job.
#[derive(Debug, Clone, Default)]
pub struct DefEnv {
    entries: HashMap<String, IdEntry>,
}

impl DefEnv {
    pub fn new() -> Self {
        DefEnv::default()
    }

    pub fn lookup(&self, id: &str) -> Option<&IdEntry> {
        self.entries.get(id)
    }

    /// Installs an entry, returning whatever it displaced so scoped
    /// definitions can be restored on exit.
    pub fn define(&mut self, id: impl Into<String>, entry: IdEntry) -> Option<IdEntry> {
        self.entries.insert(id.into(), entry)
    }

    pub fn undefine(&mut self, id: &str) -> Option<IdEntry> {
        self.entries.remove(id)
    }

    /// Reinstalls the entry displaced by an earlier `define`.
    pub fn restore(&mut self, id: &str, displaced: Option<IdEntry>) {
        match displaced {
            Some(e) => {
                self.entries.insert(id.to_owned(), e);
            }
            None => {
                self.entries.remove(id);
            }
        }
    }

    pub fn is_dim(&self, id: &str) -> bool {
        matches!(self.lookup(id), Some(IdEntry::Dim))
    }

    pub fn names(&self) -> impl Iterator<Item = &String> {
        self.entries.keys()
    }

    pub fn dims(&self) -> impl Iterator<Item = &String> {
        self.entries
            .iter()
            .filter(|(_, e)| matches!(e, IdEntry::Dim))
            .map(|(n, _)| n)
    }
}

/// Resolves a compound (dot) dimension name: `parent.child` is a dimension
/// iff the flat mangled name has a dimension entry. Hierarchy exists only
/// in the syntax; at runtime compound dimensions are flat names.
pub fn dot_dimension(parent: &str, child: &str, denv: &DefEnv) -> Result<String, UnboundDimension> {
    let name = format!("{parent}.{child}");
    if denv.is_dim(&name) {
        Ok(name)
    } else {
        Err(UnboundDimension(name))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn override_is_right_biased() {
        let p = Context::from_pairs([("d", 1), ("e", 2)]);
        let q = Context::from_pairs([("e", 9)]);
        let r = p.override_with(&q);
        assert_eq!(r.query("d"), Ok(1));
        assert_eq!(r.query("e"), Ok(9));
        assert_eq!(
            Context::empty().override_with(&Context::from_pairs([("e", 2)])),
            Context::from_pairs([("e", 2)])
        );
        let single =
            Context::from_pairs([("d", 1)]).override_with(&Context::from_pairs([("d", 5)]));
        assert_eq!(single.query("d"), Ok(5));
    }

    #[test]
    fn query_unbound_is_error() {
        let p = Context::from_pairs([("d", 3)]);
        assert_eq!(p.query("e"), Err(UnboundDimension("e".into())));
        assert_eq!(p.query("d"), Ok(3));
    }

    #[test]
    fn construction_folds_left_to_right() {
        let c = construct_context([("d", 1), ("e", 2)]);
        assert_eq!(c.query("d"), Ok(1));
        assert_eq!(c.query("e"), Ok(2));
        let dup = construct_context([("d", 1), ("d", 2)]);
        assert_eq!(dup.query("d"), Ok(2));
        assert_eq!(
            construct_context([("d", 2)]),
            Context::from_pairs([("d", 2)])
        );
    }

    #[test]
    fn set_union_intersection_preserve_order() {
        let a = ContextSet::new(vec![
            Context::from_pairs([("d", 1)]),
            Context::from_pairs([("d", 2)]),
        ]);
        let b = ContextSet::new(vec![
            Context::from_pairs([("d", 2)]),
            Context::from_pairs([("d", 3)]),
        ]);
        let u = a.union(&b);
        assert_eq!(
            u.contexts(),
            &[
                Context::from_pairs([("d", 1)]),
                Context::from_pairs([("d", 2)]),
                Context::from_pairs([("d", 3)]),
            ]
        );
        let i = a.intersection(&b);
        assert_eq!(i.contexts(), &[Context::from_pairs([("d", 2)])]);
    }

    #[test]
    fn dot_dimensions_are_flat_names() {
        let mut denv = DefEnv::new();
        denv.define("evidence.time", IdEntry::Dim);
        assert_eq!(
            dot_dimension("evidence", "time", &denv),
            Ok("evidence.time".to_string())
        );
        assert!(dot_dimension("a", "b", &denv).is_err());
        let p = Context::from_pairs([("evidence.time", 4)]);
        assert_eq!(p.query("evidence.time"), Ok(4));
    }

    #[test]
    fn display_forms() {
        let p = Context::from_pairs([("d", 3), ("e", 7)]);
        assert_eq!(p.to_string(), "[d:3, e:7]");
        let s = ContextSet::new(vec![Context::from_pairs([("d", 1)])]);
        assert_eq!(s.to_string(), "{[d:1]}");
    }
}
