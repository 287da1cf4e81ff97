//! Abstract syntax shared by the parser, printer, and evaluator.
//!
//! Operators carry an optional dimension suffix (`fby.d`); without one the
//! evaluator falls back to the ambient dimension. Dimension positions are
//! expressions so dotted dimensions (`d.e`) parse uniformly.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Id(String),
    IntLit(i64),
    BoolLit(bool),
    /// `f(a, b)`; the callee is an identifier expression.
    Apply(Box<Expr>, Vec<Expr>),
    If(Box<Expr>, Box<Expr>, Box<Expr>),
    /// `#` or `#.d`.
    Hash(Option<Box<Expr>>),
    /// `E @.d tag`: navigate one dimension.
    AtDim(Box<Expr>, Box<Expr>, Box<Expr>),
    /// `E @ C` where `C` evaluates to a context or context set.
    AtCtx(Box<Expr>, Box<Expr>),
    /// `[d:1, e:2]`.
    CtxLit(Vec<(Expr, Expr)>),
    /// `{[d:1], [d:2]}`.
    CtxSetLit(Vec<Expr>),
    Where(Box<Expr>, Vec<QDef>),
    UnOp(UnOpKind, Option<String>, Box<Expr>),
    BinOp(BinOpKind, Option<String>, Box<Expr>, Box<Expr>),
    /// `d.e`: a child dimension of `d`.
    Dot(Box<Expr>, String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QDef {
    DimDecl(String),
    VarDef(String, Expr),
    FuncDef(String, Vec<String>, Expr),
}

impl QDef {
    pub fn name(&self) -> &str {
        match self {
            QDef::DimDecl(n) | QDef::VarDef(n, _) | QDef::FuncDef(n, _, _) => n,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnOpKind {
    Neg,
    Not,
    First,
    Second,
    Last,
    Prelast,
    Next,
    Prev,
    IsEod,
    IsBod,
}

impl UnOpKind {
    pub fn name(self) -> &'static str {
        match self {
            UnOpKind::Neg => "neg",
            UnOpKind::Not => "not",
            UnOpKind::First => "first",
            UnOpKind::Second => "second",
            UnOpKind::Last => "last",
            UnOpKind::Prelast => "prelast",
            UnOpKind::Next => "next",
            UnOpKind::Prev => "prev",
            UnOpKind::IsEod => "iseod",
            UnOpKind::IsBod => "isbod",
        }
    }

    pub fn from_name(name: &str) -> Option<UnOpKind> {
        Some(match name {
            "neg" => UnOpKind::Neg,
            "not" => UnOpKind::Not,
            "first" => UnOpKind::First,
            "second" => UnOpKind::Second,
            "last" => UnOpKind::Last,
            "prelast" => UnOpKind::Prelast,
            "next" => UnOpKind::Next,
            "prev" => UnOpKind::Prev,
            "iseod" => UnOpKind::IsEod,
            "isbod" => UnOpKind::IsBod,
            _ => return None,
        })
    }

    /// Stream navigation operators bind tighter than arithmetic; `neg` and
    /// `not` sit below comparisons instead.
    pub fn is_stream(self) -> bool {
        !matches!(self, UnOpKind::Neg | UnOpKind::Not)
    }

    /// Context-shifting operators accept a `.d` suffix; the pointwise ones
    /// (`neg`, `not`, `iseod`, `isbod`) do not move the context.
    pub fn takes_suffix(self) -> bool {
        !matches!(
            self,
            UnOpKind::Neg | UnOpKind::Not | UnOpKind::IsEod | UnOpKind::IsBod
        )
    }
}

impl fmt::Display for UnOpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOpKind {
    Fby,
    Pby,
    Wvr,
    Rwvr,
    Nwvr,
    Nrwvr,
    Asa,
    Nasa,
    Ala,
    Nala,
    Upon,
    Rupon,
    Nupon,
    Nrupon,
    And,
    Or,
    Xor,
    Add,
    Sub,
    Mul,
    Div,
    Mod,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl BinOpKind {
    pub fn name(self) -> &'static str {
        match self {
            BinOpKind::Fby => "fby",
            BinOpKind::Pby => "pby",
            BinOpKind::Wvr => "wvr",
            BinOpKind::Rwvr => "rwvr",
            BinOpKind::Nwvr => "nwvr",
            BinOpKind::Nrwvr => "nrwvr",
            BinOpKind::Asa => "asa",
            BinOpKind::Nasa => "nasa",
            BinOpKind::Ala => "ala",
            BinOpKind::Nala => "nala",
            BinOpKind::Upon => "upon",
            BinOpKind::Rupon => "rupon",
            BinOpKind::Nupon => "nupon",
            BinOpKind::Nrupon => "nrupon",
            BinOpKind::And => "and",
            BinOpKind::Or => "or",
            BinOpKind::Xor => "xor",
            BinOpKind::Add => "+",
            BinOpKind::Sub => "-",
            BinOpKind::Mul => "*",
            BinOpKind::Div => "/",
            BinOpKind::Mod => "%",
            BinOpKind::Eq => "==",
            BinOpKind::Ne => "!=",
            BinOpKind::Lt => "<",
            BinOpKind::Le => "<=",
            BinOpKind::Gt => ">",
            BinOpKind::Ge => ">=",
        }
    }

    pub fn from_word(name: &str) -> Option<BinOpKind> {
        Some(match name {
            "fby" => BinOpKind::Fby,
            "pby" => BinOpKind::Pby,
            "wvr" => BinOpKind::Wvr,
            "rwvr" => BinOpKind::Rwvr,
            "nwvr" => BinOpKind::Nwvr,
            "nrwvr" => BinOpKind::Nrwvr,
            "asa" => BinOpKind::Asa,
            "nasa" => BinOpKind::Nasa,
            "ala" => BinOpKind::Ala,
            "nala" => BinOpKind::Nala,
            "upon" => BinOpKind::Upon,
            "rupon" => BinOpKind::Rupon,
            "nupon" => BinOpKind::Nupon,
            "nrupon" => BinOpKind::Nrupon,
            "and" => BinOpKind::And,
            "or" => BinOpKind::Or,
            "xor" => BinOpKind::Xor,
            _ => return None,
        })
    }

    /// `fby`/`pby` extend a stream from an element and nest to the right.
    pub fn is_prepend(self) -> bool {
        matches!(self, BinOpKind::Fby | BinOpKind::Pby)
    }

    /// The filter and advance families share one left-associative level.
    pub fn is_filter(self) -> bool {
        matches!(
            self,
            BinOpKind::Wvr
                | BinOpKind::Rwvr
                | BinOpKind::Nwvr
                | BinOpKind::Nrwvr
                | BinOpKind::Asa
                | BinOpKind::Nasa
                | BinOpKind::Ala
                | BinOpKind::Nala
                | BinOpKind::Upon
                | BinOpKind::Rupon
                | BinOpKind::Nupon
                | BinOpKind::Nrupon
        )
    }

    pub fn is_comparison(self) -> bool {
        matches!(
            self,
            BinOpKind::Eq
                | BinOpKind::Ne
                | BinOpKind::Lt
                | BinOpKind::Le
                | BinOpKind::Gt
                | BinOpKind::Ge
        )
    }

    /// Dimensional operators accept a `.d` suffix; arithmetic and
    /// comparison work pointwise in whatever context they are demanded.
    pub fn takes_suffix(self) -> bool {
        self.is_prepend() || self.is_filter()
    }
}

impl fmt::Display for BinOpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Expr {
    pub fn id(name: impl Into<String>) -> Expr {
        Expr::Id(name.into())
    }

    pub fn int(v: i64) -> Expr {
        Expr::IntLit(v)
    }

    pub fn boolean(v: bool) -> Expr {
        Expr::BoolLit(v)
    }

    pub fn unop(kind: UnOpKind, dim: Option<&str>, operand: Expr) -> Expr {
        Expr::UnOp(kind, dim.map(str::to_owned), Box::new(operand))
    }

    pub fn binop(kind: BinOpKind, dim: Option<&str>, lhs: Expr, rhs: Expr) -> Expr {
        Expr::BinOp(kind, dim.map(str::to_owned), Box::new(lhs), Box::new(rhs))
    }

    pub fn if_(cond: Expr, then: Expr, els: Expr) -> Expr {
        Expr::If(Box::new(cond), Box::new(then), Box::new(els))
    }
}
