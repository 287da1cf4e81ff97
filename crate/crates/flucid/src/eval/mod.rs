//! Demand-driven evaluation.
//!
//! A value is demanded as `(expression, context)`; stream operators
//! rewrite the demand through `@` and `#` until it bottoms out in
//! literals, constants, and dimension tags. Variable lookups are memoized
//! per `(name, context)`. Operators whose value at one tag depends on an
//! unbounded suffix of their operand (`last`, `pby`, the reverse
//! families) materialize the operand along the working dimension and
//! apply the random-access kernel instead.

mod trace;

pub use trace::{explain, explain_json, TraceEntry};

use std::collections::{HashMap, HashSet};
use std::rc::Rc;

use crate::context::{dot_dimension, BuiltinTag, Context, ContextSet, DefEnv, IdEntry};
use crate::forensic;
use crate::ops::indexed::{
    i_ala, i_last, i_nala, i_nrupon, i_nrwvr, i_pby, i_rupon, i_rwvr, IndexedStream,
};
use crate::stream::BoundedStream;
use crate::syntax::ast::{BinOpKind, Expr, QDef, UnOpKind};
use crate::syntax::desugar::{desugar, DesugarError};
use crate::syntax::lexer::ParseError;
use crate::syntax::parser::parse;
use crate::syntax::printer::print;
use crate::value::{logical_not, logical_result, Value};

/// The dimension an unsuffixed stream operator works along.
pub const DEFAULT_DIM: &str = "d";

/// Default bound on demand nesting; one unit per evaluator entry.
pub const DEFAULT_DEPTH: u64 = 10_000;

const DEFAULT_STEPS: u64 = 50_000_000;

/// How far materialization scans past consecutive leading `bod`s before
/// concluding the stream has no defined region at all.
const LEAD_PROBE: i64 = 1_000;

/// Hard cap on materialized stream length and pointwise filter scans.
const MATERIALIZE_MAX: i64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalErrorKind {
    #[error("`{0}` is not defined")]
    Unbound(String),
    #[error("type error: {0}")]
    Type(String),
    #[error("`{name}` expects {expected} argument(s), got {got}")]
    Arity {
        name: String,
        expected: usize,
        got: usize,
    },
    #[error("`{0}` is not a dimension")]
    UnboundDimension(String),
    #[error("marker in context arithmetic: {0}")]
    MarkerArithmetic(String),
    #[error("{0}")]
    Recursion(String),
    #[error("{0}")]
    ResourceLimit(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{kind} in `{at}` at {ctx}")]
pub struct EvalError {
    pub kind: EvalErrorKind,
    /// The offending expression, printed.
    pub at: String,
    pub ctx: Context,
}

/// Everything that can go wrong between source text and a value.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProgramError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Desugar(#[from] DesugarError),
    #[error("{0}")]
    Eval(#[from] EvalError),
}

pub struct EvalSession {
    denv: DefEnv,
    /// `(name, context)` memo; the `Rc` witnesses which definition body
    /// produced the value, so re-instantiated scopes cannot poison it.
    cache: HashMap<(String, Context), (Rc<Expr>, Value)>,
    cache_enabled: bool,
    tracing: bool,
    trace: Vec<TraceEntry>,
    depth: u64,
    depth_limit: u64,
    steps: u64,
    step_limit: u64,
    in_flight: HashSet<(String, Context)>,
    active_calls: HashSet<String>,
}

impl Default for EvalSession {
    fn default() -> Self {
        EvalSession::new()
    }
}

impl EvalSession {
    pub fn new() -> EvalSession {
        let mut denv = DefEnv::new();
        denv.define(DEFAULT_DIM, IdEntry::Dim);
        denv.define("bod", IdEntry::Const(Value::Bod));
        denv.define("eod", IdEntry::Const(Value::Eod));
        denv.define("seq", IdEntry::Op(BuiltinTag::Seq));
        denv.define("combine", IdEntry::Op(BuiltinTag::Combine));
        denv.define("product", IdEntry::Op(BuiltinTag::Product));
        denv.define("union", IdEntry::Op(BuiltinTag::Union));
        denv.define("intersect", IdEntry::Op(BuiltinTag::Intersect));
        EvalSession {
            denv,
            cache: HashMap::new(),
            cache_enabled: true,
            tracing: false,
            trace: Vec::new(),
            depth: 0,
            depth_limit: DEFAULT_DEPTH,
            steps: 0,
            step_limit: DEFAULT_STEPS,
            in_flight: HashSet::new(),
            active_calls: HashSet::new(),
        }
    }

    pub fn set_cache(&mut self, on: bool) {
        self.cache_enabled = on;
        if !on {
            self.cache.clear();
        }
    }

    pub fn set_tracing(&mut self, on: bool) {
        self.tracing = on;
        self.trace.clear();
    }

    pub fn tracing(&self) -> bool {
        self.tracing
    }

    pub fn trace(&self) -> &[TraceEntry] {
        &self.trace
    }

    pub fn set_depth_limit(&mut self, n: u64) {
        self.depth_limit = n.max(1);
    }

    pub fn set_step_limit(&mut self, n: u64) {
        self.step_limit = n.max(1);
    }

    /// Names bound in the session environment; the desugarer must avoid
    /// them when inventing binder names.
    pub fn taken_names(&self) -> HashSet<String> {
        self.denv.names().cloned().collect()
    }

    /// Every known dimension at its initial tag 0.
    pub fn base_context(&self) -> Context {
        Context::from_pairs(self.denv.dims().map(|d| (d.clone(), 0)))
    }

    /// Installs a session-level definition. The whole cache is dropped:
    /// old entries may have read the name being (re)defined.
    pub fn define(&mut self, def: &QDef) {
        match def {
            QDef::DimDecl(n) => {
                self.denv.define(n.clone(), IdEntry::Dim);
            }
            QDef::VarDef(n, body) => {
                self.denv
                    .define(n.clone(), IdEntry::Var(Rc::new(body.clone())));
            }
            QDef::FuncDef(n, params, body) => {
                self.denv.define(
                    n.clone(),
                    IdEntry::Func(Rc::new(params.clone()), Rc::new(body.clone())),
                );
            }
        }
        self.cache.clear();
    }

    /// Evaluates a desugared expression. Budgets are reset per call; the
    /// memo persists across calls until a definition changes.
    pub fn eval(&mut self, e: &Expr, ctx: &Context) -> Result<Value, EvalError> {
        self.steps = 0;
        self.depth = 0;
        self.in_flight.clear();
        self.active_calls.clear();
        if self.tracing {
            self.trace.clear();
        }
        self.ev(e, ctx)
    }

    /// Raw values of `e` at each tag of `dim` over `lo..=hi`, markers
    /// included.
    pub fn eval_window(
        &mut self,
        e: &Expr,
        dim: &str,
        lo: i64,
        hi: i64,
        ctx: &Context,
    ) -> Result<Vec<Value>, EvalError> {
        let mut out = Vec::new();
        for t in lo..=hi {
            out.push(self.eval(e, &ctx.bind(dim, t))?);
        }
        Ok(out)
    }

    /// Materializes `e` along `dim` starting at tag 0: leading `bod`s form
    /// the lead, the first marker after that ends the stream.
    pub fn eval_stream(
        &mut self,
        e: &Expr,
        dim: &str,
        ctx: &Context,
    ) -> Result<BoundedStream, EvalError> {
        self.steps = 0;
        self.depth = 0;
        self.in_flight.clear();
        self.active_calls.clear();
        self.materialize(e, dim, ctx)
    }

    fn fail(&self, kind: EvalErrorKind, e: &Expr, ctx: &Context) -> EvalError {
        EvalError {
            kind,
            at: print(e),
            ctx: ctx.clone(),
        }
    }

    fn conclude(
        &mut self,
        rule: &'static str,
        e: &Expr,
        ctx: &Context,
        v: Value,
    ) -> Result<Value, EvalError> {
        if self.tracing {
            self.trace.push(TraceEntry {
                rule,
                expr: print(e),
                ctx: ctx.to_string(),
                value: v.to_string(),
            });
        }
        Ok(v)
    }

    fn note(&mut self, rule: &'static str, expr: String, ctx: &Context, value: String) {
        if self.tracing {
            self.trace.push(TraceEntry {
                rule,
                expr,
                ctx: ctx.to_string(),
                value,
            });
        }
    }

    fn ev(&mut self, e: &Expr, ctx: &Context) -> Result<Value, EvalError> {
        self.steps += 1;
        if self.steps > self.step_limit {
            return Err(self.fail(
                EvalErrorKind::ResourceLimit(format!(
                    "step budget of {} exhausted",
                    self.step_limit
                )),
                e,
                ctx,
            ));
        }
        self.depth += 1;
        if self.depth > self.depth_limit {
            self.depth -= 1;
            return Err(self.fail(
                EvalErrorKind::ResourceLimit(format!(
                    "demand depth limit of {} exceeded",
                    self.depth_limit
                )),
                e,
                ctx,
            ));
        }
        let r = self.ev_inner(e, ctx);
        self.depth -= 1;
        r
    }

    fn ev_inner(&mut self, e: &Expr, ctx: &Context) -> Result<Value, EvalError> {
        match e {
            Expr::IntLit(v) => self.conclude("E_cid", e, ctx, Value::Int(*v)),
            Expr::BoolLit(b) => self.conclude("E_cid", e, ctx, Value::Bool(*b)),
            Expr::Id(n) => self.ev_id(n, e, ctx),
            Expr::Apply(f, args) => self.ev_apply(f, args, e, ctx),
            Expr::If(c, t, f) => {
                let vc = self.ev(c, ctx)?;
                if vc.is_marker() {
                    return self.conclude("E_c", e, ctx, vc);
                }
                match vc.truthy() {
                    Some(true) => {
                        let v = self.ev(t, ctx)?;
                        self.conclude("E_cT", e, ctx, v)
                    }
                    Some(false) => {
                        let v = self.ev(f, ctx)?;
                        self.conclude("E_cF", e, ctx, v)
                    }
                    None => Err(self.fail(
                        EvalErrorKind::Type(format!(
                            "condition must be a truth value, got {}",
                            vc.kind_name()
                        )),
                        e,
                        ctx,
                    )),
                }
            }
            Expr::Hash(None) => self.conclude("E_#(cxt)", e, ctx, Value::Ctx(ctx.clone())),
            Expr::Hash(Some(d)) => {
                let name = self.resolve_dim(d, ctx)?;
                let tag = ctx.get(&name).unwrap_or(0);
                self.conclude("E_tag", e, ctx, Value::Int(tag))
            }
            Expr::AtDim(x, d, t) => {
                let name = self.resolve_dim(d, ctx)?;
                let vt = self.ev(t, ctx)?;
                match vt {
                    Value::Int(k) => {
                        let v = self.ev(x, &ctx.bind(&name, k))?;
                        self.conclude("E_at", e, ctx, v)
                    }
                    m if m.is_marker() => self.conclude("E_at", e, ctx, m),
                    other => Err(self.fail(
                        EvalErrorKind::Type(format!(
                            "navigation tag must be an integer, got {}",
                            other.kind_name()
                        )),
                        e,
                        ctx,
                    )),
                }
            }
            Expr::AtCtx(x, c) => {
                let vc = self.ev(c, ctx)?;
                match vc {
                    Value::Ctx(c2) => {
                        let v = self.ev(x, &ctx.override_with(&c2))?;
                        self.conclude("E_at(cxt)", e, ctx, v)
                    }
                    Value::Seq(members) => {
                        let mut out = Vec::with_capacity(members.len());
                        for m in &members {
                            let Value::Ctx(c2) = m else {
                                return Err(self.fail(
                                    EvalErrorKind::Type(format!(
                                        "context set member must be a context, got {}",
                                        m.kind_name()
                                    )),
                                    e,
                                    ctx,
                                ));
                            };
                            out.push(self.ev(x, &ctx.override_with(c2))?);
                        }
                        self.conclude("E_at(cxt)", e, ctx, Value::Seq(out))
                    }
                    m if m.is_marker() => self.conclude("E_at(cxt)", e, ctx, m),
                    other => Err(self.fail(
                        EvalErrorKind::Type(format!(
                            "navigation requires a context or context set, got {}",
                            other.kind_name()
                        )),
                        e,
                        ctx,
                    )),
                }
            }
            Expr::CtxLit(entries) => {
                let mut c = Context::empty();
                for (d, t) in entries {
                    let name = self.resolve_dim(d, ctx)?;
                    let vt = self.ev(t, ctx)?;
                    match vt {
                        Value::Int(k) => c = c.bind(&name, k),
                        m if m.is_marker() => {
                            return Err(self.fail(
                                EvalErrorKind::MarkerArithmetic(format!("tag for `{name}` is {m}")),
                                e,
                                ctx,
                            ))
                        }
                        other => {
                            return Err(self.fail(
                                EvalErrorKind::Type(format!(
                                    "tag for `{name}` must be an integer, got {}",
                                    other.kind_name()
                                )),
                                e,
                                ctx,
                            ))
                        }
                    }
                }
                self.conclude("E_construction(cxt)", e, ctx, Value::Ctx(c))
            }
            Expr::CtxSetLit(members) => {
                let mut out = Vec::with_capacity(members.len());
                for m in members {
                    let v = self.ev(m, ctx)?;
                    match v {
                        Value::Ctx(_) => out.push(v),
                        other => {
                            return Err(self.fail(
                                EvalErrorKind::Type(format!(
                                    "context set member must be a context, got {}",
                                    other.kind_name()
                                )),
                                m,
                                ctx,
                            ))
                        }
                    }
                }
                self.conclude("E_construction(cxt)", e, ctx, Value::Seq(out))
            }
            Expr::Where(head, defs) => self.ev_where(head, defs, e, ctx),
            Expr::UnOp(k, sfx, x) => self.ev_unop(*k, sfx, x, e, ctx),
            Expr::BinOp(k, sfx, l, r) => self.ev_binop(*k, sfx, l, r, e, ctx),
            Expr::Dot(_, _) => Err(self.fail(
                EvalErrorKind::Type(
                    "compound dimensions may appear only in dimension positions".into(),
                ),
                e,
                ctx,
            )),
        }
    }

    fn ev_id(&mut self, n: &str, e: &Expr, ctx: &Context) -> Result<Value, EvalError> {
        let entry = match self.denv.lookup(n) {
            Some(entry) => entry.clone(),
            None => return Err(self.fail(EvalErrorKind::Unbound(n.to_owned()), e, ctx)),
        };
        match entry {
            IdEntry::Const(v) => self.conclude("E_cid", e, ctx, v),
            IdEntry::Dim => Err(self.fail(
                EvalErrorKind::Type(format!("dimension `{n}` used as a value")),
                e,
                ctx,
            )),
            IdEntry::Op(_) => Err(self.fail(
                EvalErrorKind::Type(format!("operator `{n}` used as a value")),
                e,
                ctx,
            )),
            IdEntry::Func(_, _) => Err(self.fail(
                EvalErrorKind::Type(format!("function `{n}` used as a value")),
                e,
                ctx,
            )),
            IdEntry::Var(body) => {
                let key = (n.to_owned(), ctx.clone());
                if self.cache_enabled {
                    if let Some((b, v)) = self.cache.get(&key) {
                        if Rc::ptr_eq(b, &body) {
                            let v = v.clone();
                            return self.conclude("E_vid(cache)", e, ctx, v);
                        }
                    }
                }
                if !self.in_flight.insert(key.clone()) {
                    return Err(self.fail(
                        EvalErrorKind::Recursion(format!(
                            "`{n}` demands itself at the same context"
                        )),
                        e,
                        ctx,
                    ));
                }
                let r = self.ev(&body, ctx);
                self.in_flight.remove(&key);
                let v = r?;
                if self.cache_enabled {
                    self.cache.insert(key, (body, v.clone()));
                }
                self.conclude("E_vid", e, ctx, v)
            }
        }
    }

    fn ev_apply(
        &mut self,
        f: &Expr,
        args: &[Expr],
        e: &Expr,
        ctx: &Context,
    ) -> Result<Value, EvalError> {
        let Expr::Id(name) = f else {
            return Err(self.fail(
                EvalErrorKind::Type("only named functions can be applied".into()),
                e,
                ctx,
            ));
        };
        let entry = match self.denv.lookup(name) {
            Some(entry) => entry.clone(),
            None => return Err(self.fail(EvalErrorKind::Unbound(name.clone()), e, ctx)),
        };
        match entry {
            IdEntry::Func(params, body) => {
                if params.len() != args.len() {
                    return Err(self.fail(
                        EvalErrorKind::Arity {
                            name: name.clone(),
                            expected: params.len(),
                            got: args.len(),
                        },
                        e,
                        ctx,
                    ));
                }
                if !self.active_calls.insert(name.clone()) {
                    return Err(self.fail(
                        EvalErrorKind::Recursion(format!(
                            "`{name}` called while already expanding; recursive functions are not supported"
                        )),
                        e,
                        ctx,
                    ));
                }
                let map: HashMap<String, Expr> =
                    params.iter().cloned().zip(args.iter().cloned()).collect();
                let instantiated = match subst(&body, &map) {
                    Ok(b) => b,
                    Err(msg) => {
                        self.active_calls.remove(name);
                        return Err(self.fail(EvalErrorKind::Type(msg), e, ctx));
                    }
                };
                let r = self.ev(&instantiated, ctx);
                self.active_calls.remove(name);
                let v = r?;
                self.conclude("E_fct", e, ctx, v)
            }
            IdEntry::Op(tag) => {
                let mut vals = Vec::with_capacity(args.len());
                for a in args {
                    vals.push(self.ev(a, ctx)?);
                }
                let v = self.apply_builtin(tag, name, &vals, e, ctx)?;
                self.conclude("E_op", e, ctx, v)
            }
            IdEntry::Var(_) | IdEntry::Const(_) => Err(self.fail(
                EvalErrorKind::Type(format!("`{name}` is not a function")),
                e,
                ctx,
            )),
            IdEntry::Dim => Err(self.fail(
                EvalErrorKind::Type(format!("dimension `{name}` is not a function")),
                e,
                ctx,
            )),
        }
    }

    fn apply_builtin(
        &mut self,
        tag: BuiltinTag,
        name: &str,
        vals: &[Value],
        e: &Expr,
        ctx: &Context,
    ) -> Result<Value, EvalError> {
        let arity = |expected: usize| -> Result<(), EvalError> {
            if vals.len() == expected {
                Ok(())
            } else {
                Err(self.fail(
                    EvalErrorKind::Arity {
                        name: name.to_owned(),
                        expected,
                        got: vals.len(),
                    },
                    e,
                    ctx,
                ))
            }
        };
        match tag {
            BuiltinTag::Seq => Ok(Value::Seq(vals.to_vec())),
            BuiltinTag::Combine => {
                arity(2)?;
                forensic::combine(&vals[0], &vals[1])
                    .map_err(|err| self.fail(EvalErrorKind::Type(err.0), e, ctx))
            }
            BuiltinTag::Product => {
                arity(2)?;
                forensic::product(&vals[0], &vals[1])
                    .map_err(|err| self.fail(EvalErrorKind::Type(err.0), e, ctx))
            }
            BuiltinTag::Union | BuiltinTag::Intersect => {
                arity(2)?;
                let set = |v: &Value| -> Result<ContextSet, EvalError> {
                    let Value::Seq(ms) = v else {
                        return Err(self.fail(
                            EvalErrorKind::Type(format!(
                                "`{name}` expects context sets, got {}",
                                v.kind_name()
                            )),
                            e,
                            ctx,
                        ));
                    };
                    let mut cs = Vec::with_capacity(ms.len());
                    for m in ms {
                        let Value::Ctx(c) = m else {
                            return Err(self.fail(
                                EvalErrorKind::Type(format!(
                                    "context set member must be a context, got {}",
                                    m.kind_name()
                                )),
                                e,
                                ctx,
                            ));
                        };
                        cs.push(c.clone());
                    }
                    Ok(ContextSet::new(cs))
                };
                let a = set(&vals[0])?;
                let b = set(&vals[1])?;
                let r = if tag == BuiltinTag::Union {
                    a.union(&b)
                } else {
                    a.intersection(&b)
                };
                Ok(Value::Seq(
                    r.contexts().iter().cloned().map(Value::Ctx).collect(),
                ))
            }
        }
    }

    /// Resolves a dimension position (`d` or `d.e`) to its flat name.
    fn resolve_dim(&mut self, d: &Expr, ctx: &Context) -> Result<String, EvalError> {
        match d {
            Expr::Id(n) => match self.denv.lookup(n) {
                Some(IdEntry::Dim) => {
                    self.note("E_did", n.clone(), ctx, n.clone());
                    Ok(n.clone())
                }
                Some(_) => Err(self.fail(EvalErrorKind::UnboundDimension(n.clone()), d, ctx)),
                None => Err(self.fail(EvalErrorKind::Unbound(n.clone()), d, ctx)),
            },
            Expr::Dot(head, child) => {
                let parent = self.resolve_dim(head, ctx)?;
                match dot_dimension(&parent, child, &self.denv) {
                    Ok(flat) => {
                        self.note("E_E.did", print(d), ctx, flat.clone());
                        Ok(flat)
                    }
                    Err(u) => Err(self.fail(EvalErrorKind::UnboundDimension(u.0), d, ctx)),
                }
            }
            other => Err(self.fail(
                EvalErrorKind::Type(format!(
                    "dimension position must be a name, got `{}`",
                    print(other)
                )),
                d,
                ctx,
            )),
        }
    }

    fn ev_where(
        &mut self,
        head: &Expr,
        defs: &[QDef],
        e: &Expr,
        ctx: &Context,
    ) -> Result<Value, EvalError> {
        let mut saved: Vec<(String, Option<IdEntry>)> = Vec::with_capacity(defs.len());
        let mut ctx2 = ctx.clone();
        for def in defs {
            match def {
                QDef::DimDecl(n) => {
                    saved.push((n.clone(), self.denv.define(n.clone(), IdEntry::Dim)));
                    ctx2 = ctx2.bind(n, 0);
                    self.note("Q_dim", n.clone(), &ctx2, "0".into());
                }
                QDef::VarDef(n, body) => {
                    saved.push((
                        n.clone(),
                        self.denv
                            .define(n.clone(), IdEntry::Var(Rc::new(body.clone()))),
                    ));
                    self.note("Q_id", n.clone(), ctx, print(body));
                }
                QDef::FuncDef(n, params, body) => {
                    saved.push((
                        n.clone(),
                        self.denv.define(
                            n.clone(),
                            IdEntry::Func(Rc::new(params.clone()), Rc::new(body.clone())),
                        ),
                    ));
                    self.note("Q_fid", n.clone(), ctx, print(body));
                }
            }
        }
        let r = self.ev(head, &ctx2);
        for (n, old) in saved.into_iter().rev() {
            self.denv.restore(&n, old);
        }
        let v = r?;
        self.conclude("E_w", e, ctx, v)
    }

    /// The dimension a suffixed operator works along, defaulting to the
    /// ambient dimension.
    fn op_dim(&self, sfx: &Option<String>, e: &Expr, ctx: &Context) -> Result<String, EvalError> {
        let name = sfx.as_deref().unwrap_or(DEFAULT_DIM);
        if self.denv.is_dim(name) {
            Ok(name.to_owned())
        } else if self.denv.lookup(name).is_some() {
            Err(self.fail(EvalErrorKind::UnboundDimension(name.to_owned()), e, ctx))
        } else {
            Err(self.fail(EvalErrorKind::Unbound(name.to_owned()), e, ctx))
        }
    }

    fn truthy_of(&self, v: &Value, e: &Expr, ctx: &Context) -> Result<bool, EvalError> {
        v.truthy().ok_or_else(|| {
            self.fail(
                EvalErrorKind::Type(format!("expected a truth value, got {}", v.kind_name())),
                e,
                ctx,
            )
        })
    }

    /// Walks `e` along `dim` from tag 0 into a bounded stream. Leading
    /// `bod`s become the lead; the first marker after the defined region
    /// terminates the stream and sets its trailing marker.
    fn materialize(
        &mut self,
        e: &Expr,
        dim: &str,
        ctx: &Context,
    ) -> Result<BoundedStream, EvalError> {
        let mut lead = 0usize;
        let mut elements = Vec::new();
        for i in 0..MATERIALIZE_MAX {
            let v = self.ev(e, &ctx.bind(dim, i))?;
            match v {
                Value::Bod if elements.is_empty() => {
                    lead += 1;
                    if lead as i64 > LEAD_PROBE {
                        // no defined region within reach: an all-bod
                        // stream (an empty reverse-direction result)
                        return Ok(BoundedStream::with(
                            0,
                            Vec::new(),
                            crate::stream::Marker::Bod,
                        ));
                    }
                }
                Value::Eod => {
                    return Ok(BoundedStream::with(
                        lead,
                        elements,
                        crate::stream::Marker::Eod,
                    ))
                }
                Value::Bod => {
                    return Ok(BoundedStream::with(
                        lead,
                        elements,
                        crate::stream::Marker::Bod,
                    ))
                }
                v => elements.push(v),
            }
        }
        Err(self.fail(
            EvalErrorKind::ResourceLimit(format!(
                "stream did not end within {MATERIALIZE_MAX} tags of `{dim}`"
            )),
            e,
            ctx,
        ))
    }

    fn ev_unop(
        &mut self,
        k: UnOpKind,
        sfx: &Option<String>,
        x: &Expr,
        e: &Expr,
        ctx: &Context,
    ) -> Result<Value, EvalError> {
        // pointwise value operators first: they have no dimension
        match k {
            UnOpKind::Neg => {
                let v = self.ev(x, ctx)?;
                return match v {
                    Value::Int(n) => self.conclude("E_op", e, ctx, Value::Int(-n)),
                    m if m.is_marker() => self.conclude("E_op", e, ctx, m),
                    other => Err(self.fail(
                        EvalErrorKind::Type(format!(
                            "neg expects an integer, got {}",
                            other.kind_name()
                        )),
                        e,
                        ctx,
                    )),
                };
            }
            UnOpKind::Not => {
                let v = self.ev(x, ctx)?;
                if v.is_marker() {
                    return self.conclude("E_op", e, ctx, v);
                }
                let t = self.truthy_of(&v, e, ctx)?;
                return self.conclude("E_op", e, ctx, logical_not(&v, t));
            }
            UnOpKind::IsEod => {
                let v = self.ev(x, ctx)?;
                return self.conclude("E_op", e, ctx, Value::Bool(v == Value::Eod));
            }
            UnOpKind::IsBod => {
                let v = self.ev(x, ctx)?;
                return self.conclude("E_op", e, ctx, Value::Bool(v == Value::Bod));
            }
            _ => {}
        }
        let dim = self.op_dim(sfx, e, ctx)?;
        let t = ctx.get(&dim).unwrap_or(0);
        match k {
            UnOpKind::First => {
                // bounded to the operand's extent: past the end the
                // operand's marker wins over the constant value
                let here = self.ev(x, ctx)?;
                if here.is_marker() {
                    return self.conclude("E_op", e, ctx, here);
                }
                let v = self.ev(x, &ctx.bind(&dim, 0))?;
                self.conclude("E_op", e, ctx, v)
            }
            UnOpKind::Next => {
                let v = self.ev(x, &ctx.bind(&dim, t + 1))?;
                self.conclude("E_op", e, ctx, v)
            }
            UnOpKind::Prev => {
                // bounded to the operand's extent: the last element is
                // dropped, not shifted past the end, and an empty operand
                // stays empty
                let here = self.ev(x, ctx)?;
                if here.is_marker() {
                    return self.conclude("E_op", e, ctx, here);
                }
                if t <= 0 {
                    return self.conclude("E_op", e, ctx, Value::Bod);
                }
                let v = self.ev(x, &ctx.bind(&dim, t - 1))?;
                self.conclude("E_op", e, ctx, v)
            }
            UnOpKind::Second => {
                let expanded = Expr::UnOp(
                    UnOpKind::First,
                    sfx.clone(),
                    Box::new(Expr::UnOp(UnOpKind::Next, sfx.clone(), Box::new(x.clone()))),
                );
                let v = self.ev(&expanded, ctx)?;
                self.conclude("E_op", e, ctx, v)
            }
            UnOpKind::Prelast => {
                let expanded = Expr::UnOp(
                    UnOpKind::Last,
                    sfx.clone(),
                    Box::new(Expr::UnOp(UnOpKind::Prev, sfx.clone(), Box::new(x.clone()))),
                );
                let v = self.ev(&expanded, ctx)?;
                self.conclude("E_op", e, ctx, v)
            }
            UnOpKind::Last => {
                let s = self.materialize(x, &dim, ctx)?;
                let v = i_last(&IndexedStream::new(s)).at(t);
                self.conclude("E_op", e, ctx, v)
            }
            UnOpKind::Neg | UnOpKind::Not | UnOpKind::IsEod | UnOpKind::IsBod => {
                unreachable!("handled above")
            }
        }
    }

    fn ev_binop(
        &mut self,
        k: BinOpKind,
        sfx: &Option<String>,
        l: &Expr,
        r: &Expr,
        e: &Expr,
        ctx: &Context,
    ) -> Result<Value, EvalError> {
        use BinOpKind as B;
        if !k.takes_suffix() {
            return self.ev_pointwise_binop(k, l, r, e, ctx);
        }
        let dim = self.op_dim(sfx, e, ctx)?;
        let t = ctx.get(&dim).unwrap_or(0);
        match k {
            B::Fby => {
                let v = if t <= 0 {
                    self.ev(l, ctx)?
                } else {
                    self.ev(r, &ctx.bind(&dim, t - 1))?
                };
                self.conclude("E_op", e, ctx, v)
            }
            B::Wvr | B::Nwvr => {
                let keep = k == B::Wvr;
                if t < 0 {
                    return self.conclude("E_op", e, ctx, Value::Bod);
                }
                let mut remaining = t;
                for j in 0..MATERIALIZE_MAX {
                    let vy = self.ev(r, &ctx.bind(&dim, j))?;
                    if vy.is_marker() {
                        return self.conclude("E_op", e, ctx, Value::Eod);
                    }
                    if self.truthy_of(&vy, r, ctx)? == keep {
                        if remaining == 0 {
                            let v = self.ev(l, &ctx.bind(&dim, j))?;
                            return self.conclude("E_op", e, ctx, v);
                        }
                        remaining -= 1;
                    }
                }
                Err(self.fail(
                    EvalErrorKind::ResourceLimit(format!(
                        "filter scanned {MATERIALIZE_MAX} tags without finding element {t}"
                    )),
                    e,
                    ctx,
                ))
            }
            B::Asa | B::Nasa => {
                let keep = k == B::Asa;
                // constant over the left operand's extent
                let here = self.ev(l, ctx)?;
                if here.is_marker() {
                    return self.conclude("E_op", e, ctx, here);
                }
                for j in 0..MATERIALIZE_MAX {
                    let vy = self.ev(r, &ctx.bind(&dim, j))?;
                    if vy.is_marker() {
                        return self.conclude("E_op", e, ctx, Value::Eod);
                    }
                    if self.truthy_of(&vy, r, ctx)? == keep {
                        let v = self.ev(l, &ctx.bind(&dim, j))?;
                        return self.conclude("E_op", e, ctx, v);
                    }
                }
                Err(self.fail(
                    EvalErrorKind::ResourceLimit(format!(
                        "filter scanned {MATERIALIZE_MAX} tags without a qualifying element"
                    )),
                    e,
                    ctx,
                ))
            }
            B::Upon | B::Nupon => {
                let advance_on = k == B::Upon;
                if t < 0 {
                    return self.conclude("E_op", e, ctx, Value::Bod);
                }
                let mut w: i64 = 0;
                let mut prev_advanced = None;
                for i in 0..t {
                    let vy = self.ev(r, &ctx.bind(&dim, i))?;
                    if vy.is_marker() {
                        return self.conclude("E_op", e, ctx, Value::Eod);
                    }
                    let advanced = self.truthy_of(&vy, r, ctx)? == advance_on;
                    if advanced {
                        w += 1;
                    }
                    prev_advanced = Some(advanced);
                }
                let vy_t = self.ev(r, &ctx.bind(&dim, t))?;
                if !vy_t.is_marker() {
                    let v = self.ev(l, &ctx.bind(&dim, w))?;
                    return self.conclude("E_op", e, ctx, v);
                }
                // the condition ends exactly here: the walk still rests on
                // index w when the final step did not advance
                if prev_advanced == Some(false) {
                    let v = self.ev(l, &ctx.bind(&dim, w))?;
                    return self.conclude("E_op", e, ctx, v);
                }
                self.conclude("E_op", e, ctx, Value::Eod)
            }
            B::Pby => {
                let sx = self.materialize(l, &dim, ctx)?;
                let sy = self.materialize(r, &dim, ctx)?;
                let v = i_pby(&IndexedStream::new(sx), &IndexedStream::new(sy)).at(t);
                self.conclude("E_op", e, ctx, v)
            }
            B::Ala | B::Nala | B::Rwvr | B::Nrwvr | B::Rupon | B::Nrupon => {
                let sx = IndexedStream::new(self.materialize(l, &dim, ctx)?);
                let sy = IndexedStream::new(self.materialize(r, &dim, ctx)?);
                let res = match k {
                    B::Ala => i_ala(&sx, &sy),
                    B::Nala => i_nala(&sx, &sy),
                    B::Rwvr => i_rwvr(&sx, &sy),
                    B::Nrwvr => i_nrwvr(&sx, &sy),
                    B::Rupon => i_rupon(&sx, &sy),
                    B::Nrupon => i_nrupon(&sx, &sy),
                    _ => unreachable!(),
                };
                let v = res
                    .map_err(|err| self.fail(EvalErrorKind::Type(err.0), e, ctx))?
                    .at(t);
                self.conclude("E_op", e, ctx, v)
            }
            _ => unreachable!("suffixed operators covered"),
        }
    }

    fn ev_pointwise_binop(
        &mut self,
        k: BinOpKind,
        l: &Expr,
        r: &Expr,
        e: &Expr,
        ctx: &Context,
    ) -> Result<Value, EvalError> {
        use BinOpKind as B;
        let va = self.ev(l, ctx)?;
        if va.is_marker() {
            return self.conclude("E_op", e, ctx, va);
        }
        let vb = self.ev(r, ctx)?;
        if vb.is_marker() {
            return self.conclude("E_op", e, ctx, vb);
        }
        let v = match k {
            B::And | B::Or | B::Xor => {
                let ta = self.truthy_of(&va, l, ctx)?;
                let tb = self.truthy_of(&vb, r, ctx)?;
                let out = match k {
                    B::And => ta && tb,
                    B::Or => ta || tb,
                    _ => ta != tb,
                };
                logical_result(&va, &vb, out)
            }
            B::Add | B::Sub | B::Mul | B::Div | B::Mod => {
                let (Value::Int(a), Value::Int(b)) = (&va, &vb) else {
                    return Err(self.fail(
                        EvalErrorKind::Type(format!(
                            "arithmetic needs integers, got {} and {}",
                            va.kind_name(),
                            vb.kind_name()
                        )),
                        e,
                        ctx,
                    ));
                };
                let (a, b) = (*a, *b);
                if matches!(k, B::Div | B::Mod) && b == 0 {
                    return Err(self.fail(EvalErrorKind::Type("division by zero".into()), e, ctx));
                }
                let out = match k {
                    B::Add => a.checked_add(b),
                    B::Sub => a.checked_sub(b),
                    B::Mul => a.checked_mul(b),
                    B::Div => a.checked_div(b),
                    _ => a.checked_rem(b),
                };
                match out {
                    Some(n) => Value::Int(n),
                    None => {
                        return Err(self.fail(
                            EvalErrorKind::Type("integer overflow".into()),
                            e,
                            ctx,
                        ))
                    }
                }
            }
            B::Eq | B::Ne => {
                let same_kind = va.kind_name() == vb.kind_name();
                if !same_kind {
                    return Err(self.fail(
                        EvalErrorKind::Type(format!(
                            "cannot compare {} with {}",
                            va.kind_name(),
                            vb.kind_name()
                        )),
                        e,
                        ctx,
                    ));
                }
                Value::Bool(if k == B::Eq { va == vb } else { va != vb })
            }
            B::Lt | B::Le | B::Gt | B::Ge => {
                let (Value::Int(a), Value::Int(b)) = (&va, &vb) else {
                    return Err(self.fail(
                        EvalErrorKind::Type(format!(
                            "ordering needs integers, got {} and {}",
                            va.kind_name(),
                            vb.kind_name()
                        )),
                        e,
                        ctx,
                    ));
                };
                Value::Bool(match k {
                    B::Lt => a < b,
                    B::Le => a <= b,
                    B::Gt => a > b,
                    _ => a >= b,
                })
            }
            _ => unreachable!("pointwise operators covered"),
        };
        self.conclude("E_op", e, ctx, v)
    }
}

/// Call-by-name instantiation: replaces parameter references with argument
/// expressions. Desugared binder uniqueness guarantees no capture. A
/// parameter used as an operator's dimension suffix requires the argument
/// to be a plain name.
fn subst(e: &Expr, map: &HashMap<String, Expr>) -> Result<Expr, String> {
    let subst_suffix = |sfx: &Option<String>| -> Result<Option<String>, String> {
        match sfx {
            Some(s) => match map.get(s) {
                Some(Expr::Id(n)) => Ok(Some(n.clone())),
                Some(other) => Err(format!(
                    "dimension operand `.{s}` needs a dimension name, got `{}`",
                    print(other)
                )),
                None => Ok(Some(s.clone())),
            },
            None => Ok(None),
        }
    };
    Ok(match e {
        Expr::Id(n) => match map.get(n) {
            Some(arg) => arg.clone(),
            None => e.clone(),
        },
        Expr::IntLit(_) | Expr::BoolLit(_) => e.clone(),
        Expr::Apply(f, args) => Expr::Apply(
            Box::new(subst(f, map)?),
            args.iter()
                .map(|a| subst(a, map))
                .collect::<Result<_, _>>()?,
        ),
        Expr::If(a, b, c) => Expr::If(
            Box::new(subst(a, map)?),
            Box::new(subst(b, map)?),
            Box::new(subst(c, map)?),
        ),
        Expr::Hash(d) => Expr::Hash(match d {
            Some(d) => Some(Box::new(subst(d, map)?)),
            None => None,
        }),
        Expr::AtDim(x, d, t) => Expr::AtDim(
            Box::new(subst(x, map)?),
            Box::new(subst(d, map)?),
            Box::new(subst(t, map)?),
        ),
        Expr::AtCtx(x, c) => Expr::AtCtx(Box::new(subst(x, map)?), Box::new(subst(c, map)?)),
        Expr::CtxLit(entries) => Expr::CtxLit(
            entries
                .iter()
                .map(|(d, t)| Ok((subst(d, map)?, subst(t, map)?)))
                .collect::<Result<_, String>>()?,
        ),
        Expr::CtxSetLit(ms) => {
            Expr::CtxSetLit(ms.iter().map(|m| subst(m, map)).collect::<Result<_, _>>()?)
        }
        Expr::Where(h, defs) => Expr::Where(
            Box::new(subst(h, map)?),
            defs.iter()
                .map(|d| {
                    Ok(match d {
                        QDef::DimDecl(n) => QDef::DimDecl(n.clone()),
                        QDef::VarDef(n, b) => QDef::VarDef(n.clone(), subst(b, map)?),
                        QDef::FuncDef(n, ps, b) => {
                            QDef::FuncDef(n.clone(), ps.clone(), subst(b, map)?)
                        }
                    })
                })
                .collect::<Result<_, String>>()?,
        ),
        Expr::UnOp(k, sfx, x) => Expr::UnOp(*k, subst_suffix(sfx)?, Box::new(subst(x, map)?)),
        Expr::BinOp(k, sfx, l, r) => Expr::BinOp(
            *k,
            subst_suffix(sfx)?,
            Box::new(subst(l, map)?),
            Box::new(subst(r, map)?),
        ),
        Expr::Dot(h, c) => Expr::Dot(Box::new(subst(h, map)?), c.clone()),
    })
}

/// Parses, desugars, and evaluates a complete program in a fresh session
/// at the base context.
pub fn eval_program(src: &str) -> Result<Value, ProgramError> {
    let ast = parse(src)?;
    let mut session = EvalSession::new();
    let ast = desugar(&ast, &session.taken_names())?;
    let ctx = session.base_context();
    Ok(session.eval(&ast, &ctx)?)
}
