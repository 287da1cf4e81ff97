//! Recursive descent parser.
//!
//! Precedence, loosest to tightest: `where` clauses; `@` navigation;
//! `fby`/`pby` (right associative); the filter and advance families;
//! `or`/`xor`; `and`; prefix `not`/`neg`; comparisons; additive;
//! multiplicative; prefix stream navigation (`first` .. `prev`, `iseod`,
//! `isbod`); application, `.` selection, and atoms.

use super::ast::{BinOpKind, Expr, QDef, UnOpKind};
use super::lexer::{tokenize, ParseError, Tok, Token};

const KEYWORDS: &[&str] = &[
    "where",
    "end",
    "dimension",
    "if",
    "then",
    "else",
    "fi",
    "true",
    "false",
    "T",
    "F",
    "fby",
    "pby",
    "wvr",
    "rwvr",
    "nwvr",
    "nrwvr",
    "asa",
    "nasa",
    "ala",
    "nala",
    "upon",
    "rupon",
    "nupon",
    "nrupon",
    "and",
    "or",
    "xor",
    "not",
    "neg",
    "first",
    "second",
    "last",
    "prelast",
    "next",
    "prev",
    "iseod",
    "isbod",
];

pub fn is_keyword(name: &str) -> bool {
    KEYWORDS.contains(&name)
}

/// One line of interactive input: a definition or an expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LineItem {
    Def(QDef),
    Expr(Expr),
}

/// Parses a complete program: one expression, usually with a `where`
/// clause.
pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser::new(tokenize(src)?);
    let e = p.expr()?;
    p.expect_eof()?;
    Ok(e)
}

/// Parses one interactive line; a trailing `;` is optional.
pub fn parse_line(src: &str) -> Result<LineItem, ParseError> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(ParseError::new("empty input", 1, 1));
    }
    let mut p = Parser::new(toks);
    if p.at_word("dimension") {
        p.bump();
        let name = p.dim_decl_name()?;
        p.eat(&Tok::Semi);
        p.expect_eof()?;
        return Ok(LineItem::Def(QDef::DimDecl(name)));
    }
    if let Some(item) = p.try_definition()? {
        p.eat(&Tok::Semi);
        p.expect_eof()?;
        return Ok(LineItem::Def(item));
    }
    let e = p.expr()?;
    p.eat(&Tok::Semi);
    p.expect_eof()?;
    Ok(LineItem::Expr(e))
}

/// Nesting bound for the recursive descent; a tree this deep is beyond any
/// real program of the sizes this implementation accepts.
const MAX_NESTING: usize = 500;

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    depth: usize,
}

impl Parser {
    fn new(toks: Vec<Token>) -> Self {
        Parser {
            toks,
            pos: 0,
            depth: 0,
        }
    }

    /// Every cycle in the grammar passes through a guarded level, so this
    /// bounds stack growth on adversarial input.
    fn guarded<T>(
        &mut self,
        f: impl FnOnce(&mut Self) -> Result<T, ParseError>,
    ) -> Result<T, ParseError> {
        self.depth += 1;
        let out = if self.depth > MAX_NESTING {
            Err(self.err("expression nesting is too deep"))
        } else {
            f(self)
        };
        self.depth -= 1;
        out
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, n: usize) -> Option<&Tok> {
        self.toks.get(self.pos + n).map(|t| &t.tok)
    }

    fn bump(&mut self) -> &Tok {
        let t = &self.toks[self.pos].tok;
        self.pos += 1;
        t
    }

    fn here(&self) -> (u32, u32) {
        match self.toks.get(self.pos).or_else(|| self.toks.last()) {
            Some(t) => (t.line, t.col),
            None => (1, 1),
        }
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        let (line, col) = self.here();
        ParseError::new(msg, line, col)
    }

    fn found(&self) -> String {
        match self.peek() {
            Some(t) => format!("{t}"),
            None => "end of input".to_owned(),
        }
    }

    fn expect(&mut self, tok: &Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(tok) {
            self.bump();
            Ok(())
        } else {
            Err(self.err(format!("expected {what}, found {}", self.found())))
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_eof(&self) -> Result<(), ParseError> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            Err(self.err(format!("unexpected {} after expression", self.found())))
        }
    }

    fn at_word(&self, w: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == w)
    }

    fn expect_word(&mut self, w: &str) -> Result<(), ParseError> {
        if self.at_word(w) {
            self.bump();
            Ok(())
        } else {
            Err(self.err(format!("expected `{w}`, found {}", self.found())))
        }
    }

    fn binder_name(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) if !is_keyword(s) => {
                let name = s.clone();
                self.bump();
                Ok(name)
            }
            Some(Tok::Ident(s)) => Err(self.err(format!("`{s}` is a keyword, not a name"))),
            _ => Err(self.err(format!("expected a name, found {}", self.found()))),
        }
    }

    /// `d` or `d.e`: child dimensions are declared under their parent's
    /// flat name.
    fn dim_decl_name(&mut self) -> Result<String, ParseError> {
        let mut s = self.binder_name()?;
        while self.eat(&Tok::Dot) {
            s.push('.');
            s.push_str(&self.binder_name()?);
        }
        Ok(s)
    }

    /// `[Ident, `=`, ...]` or `[Ident, `(`, names, `)`, `=`, ...]`.
    fn try_definition(&mut self) -> Result<Option<QDef>, ParseError> {
        let is_plain = matches!(self.peek(), Some(Tok::Ident(s)) if !is_keyword(s));
        if !is_plain {
            return Ok(None);
        }
        match self.peek_at(1) {
            Some(Tok::Assign) => {
                let name = self.binder_name()?;
                self.bump();
                let body = self.expr()?;
                Ok(Some(QDef::VarDef(name, body)))
            }
            Some(Tok::LParen) => {
                // look ahead for `(name, name) =` before committing
                let mut i = self.pos + 2;
                loop {
                    match self.toks.get(i).map(|t| &t.tok) {
                        Some(Tok::Ident(s)) if !is_keyword(s) => {
                            i += 1;
                            match self.toks.get(i).map(|t| &t.tok) {
                                Some(Tok::Comma) => i += 1,
                                Some(Tok::RParen) => {
                                    i += 1;
                                    break;
                                }
                                _ => return Ok(None),
                            }
                        }
                        Some(Tok::RParen) if i == self.pos + 2 => {
                            i += 1;
                            break;
                        }
                        _ => return Ok(None),
                    }
                }
                if self.toks.get(i).map(|t| &t.tok) != Some(&Tok::Assign) {
                    return Ok(None);
                }
                let name = self.binder_name()?;
                self.bump();
                let mut params = Vec::new();
                if !self.eat(&Tok::RParen) {
                    loop {
                        params.push(self.binder_name()?);
                        if self.eat(&Tok::RParen) {
                            break;
                        }
                        self.expect(&Tok::Comma, "`,` or `)`")?;
                    }
                }
                self.expect(&Tok::Assign, "`=`")?;
                let body = self.expr()?;
                Ok(Some(QDef::FuncDef(name, params, body)))
            }
            _ => Ok(None),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.at_level()?;
        while self.at_word("where") {
            self.bump();
            let defs = self.defs()?;
            e = Expr::Where(Box::new(e), defs);
        }
        Ok(e)
    }

    fn defs(&mut self) -> Result<Vec<QDef>, ParseError> {
        let mut out = Vec::new();
        loop {
            if self.at_word("end") {
                self.bump();
                return Ok(out);
            }
            if self.at_word("dimension") {
                self.bump();
                let name = self.dim_decl_name()?;
                self.expect(&Tok::Semi, "`;`")?;
                out.push(QDef::DimDecl(name));
                continue;
            }
            if self.peek().is_none() {
                return Err(self.err("expected a definition or `end`".to_owned()));
            }
            let name = self.binder_name()?;
            if self.eat(&Tok::LParen) {
                let mut params = Vec::new();
                if !self.eat(&Tok::RParen) {
                    loop {
                        params.push(self.binder_name()?);
                        if self.eat(&Tok::RParen) {
                            break;
                        }
                        self.expect(&Tok::Comma, "`,` or `)`")?;
                    }
                }
                self.expect(&Tok::Assign, "`=`")?;
                let body = self.expr()?;
                self.expect(&Tok::Semi, "`;`")?;
                out.push(QDef::FuncDef(name, params, body));
            } else {
                self.expect(&Tok::Assign, "`=`")?;
                let body = self.expr()?;
                self.expect(&Tok::Semi, "`;`")?;
                out.push(QDef::VarDef(name, body));
            }
        }
    }

    fn at_level(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.prepend_level()?;
        while self.eat(&Tok::At) {
            if self.eat(&Tok::Dot) {
                let dim = self.dim_path()?;
                let tag = self.prepend_level()?;
                e = Expr::AtDim(Box::new(e), Box::new(dim), Box::new(tag));
            } else {
                let ctx = self.prepend_level()?;
                e = Expr::AtCtx(Box::new(e), Box::new(ctx));
            }
        }
        Ok(e)
    }

    fn dim_path(&mut self) -> Result<Expr, ParseError> {
        let mut e = Expr::Id(self.binder_name()?);
        while self.peek() == Some(&Tok::Dot) {
            if matches!(self.peek_at(1), Some(Tok::Ident(s)) if !is_keyword(s)) {
                self.bump();
                e = Expr::Dot(Box::new(e), self.binder_name()?);
            } else {
                break;
            }
        }
        Ok(e)
    }

    fn word_binop(&self) -> Option<BinOpKind> {
        match self.peek() {
            Some(Tok::Ident(s)) => BinOpKind::from_word(s),
            _ => None,
        }
    }

    fn op_suffix(&mut self, allowed: bool) -> Result<Option<String>, ParseError> {
        if !allowed || self.peek() != Some(&Tok::Dot) {
            return Ok(None);
        }
        self.bump();
        let mut s = self.binder_name()?;
        while self.peek() == Some(&Tok::Dot)
            && matches!(self.peek_at(1), Some(Tok::Ident(n)) if !is_keyword(n))
        {
            self.bump();
            s.push('.');
            s.push_str(&self.binder_name()?);
        }
        Ok(Some(s))
    }

    fn prepend_level(&mut self) -> Result<Expr, ParseError> {
        self.guarded(Self::prepend_tail)
    }

    fn prepend_tail(&mut self) -> Result<Expr, ParseError> {
        let lhs = self.filter_level()?;
        if let Some(k) = self.word_binop() {
            if k.is_prepend() {
                self.bump();
                let sfx = self.op_suffix(true)?;
                let rhs = self.prepend_level()?;
                return Ok(Expr::BinOp(k, sfx, Box::new(lhs), Box::new(rhs)));
            }
        }
        Ok(lhs)
    }

    fn filter_level(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.or_level()?;
        while let Some(k) = self.word_binop() {
            if !k.is_filter() {
                break;
            }
            self.bump();
            let sfx = self.op_suffix(true)?;
            let rhs = self.or_level()?;
            lhs = Expr::BinOp(k, sfx, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn or_level(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.and_level()?;
        while matches!(self.word_binop(), Some(BinOpKind::Or | BinOpKind::Xor)) {
            let k = self.word_binop().expect("checked");
            self.bump();
            let rhs = self.and_level()?;
            lhs = Expr::BinOp(k, None, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn and_level(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary_low()?;
        while matches!(self.word_binop(), Some(BinOpKind::And)) {
            self.bump();
            let rhs = self.unary_low()?;
            lhs = Expr::BinOp(BinOpKind::And, None, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary_low(&mut self) -> Result<Expr, ParseError> {
        self.guarded(Self::unary_low_tail)
    }

    fn unary_low_tail(&mut self) -> Result<Expr, ParseError> {
        if self.at_word("not") || self.at_word("neg") {
            let k = if self.at_word("not") {
                UnOpKind::Not
            } else {
                UnOpKind::Neg
            };
            self.bump();
            let operand = self.unary_low()?;
            return Ok(Expr::UnOp(k, None, Box::new(operand)));
        }
        self.comparison_level()
    }

    fn comparison_level(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.add_level()?;
        loop {
            let k = match self.peek() {
                Some(Tok::EqEq) => BinOpKind::Eq,
                Some(Tok::Ne) => BinOpKind::Ne,
                Some(Tok::Lt) => BinOpKind::Lt,
                Some(Tok::Le) => BinOpKind::Le,
                Some(Tok::Gt) => BinOpKind::Gt,
                Some(Tok::Ge) => BinOpKind::Ge,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.add_level()?;
            lhs = Expr::BinOp(k, None, Box::new(lhs), Box::new(rhs));
        }
    }

    fn add_level(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.mul_level()?;
        loop {
            let k = match self.peek() {
                Some(Tok::Plus) => BinOpKind::Add,
                Some(Tok::Minus) => BinOpKind::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.mul_level()?;
            lhs = Expr::BinOp(k, None, Box::new(lhs), Box::new(rhs));
        }
    }

    fn mul_level(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary_high()?;
        loop {
            let k = match self.peek() {
                Some(Tok::Star) => BinOpKind::Mul,
                Some(Tok::Slash) => BinOpKind::Div,
                Some(Tok::Percent) => BinOpKind::Mod,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary_high()?;
            lhs = Expr::BinOp(k, None, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary_high(&mut self) -> Result<Expr, ParseError> {
        self.guarded(Self::unary_high_tail)
    }

    fn unary_high_tail(&mut self) -> Result<Expr, ParseError> {
        if let Some(Tok::Ident(s)) = self.peek() {
            if let Some(k) = UnOpKind::from_name(s) {
                if k.is_stream() {
                    self.bump();
                    let sfx = self.op_suffix(k.takes_suffix())?;
                    let operand = self.unary_high()?;
                    return Ok(Expr::UnOp(k, sfx, Box::new(operand)));
                }
            }
        }
        self.postfix_level()
    }

    fn postfix_level(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.atom()?;
        loop {
            match self.peek() {
                Some(Tok::LParen) if matches!(e, Expr::Id(_)) => {
                    self.bump();
                    let mut args = Vec::new();
                    if !self.eat(&Tok::RParen) {
                        loop {
                            args.push(self.expr()?);
                            if self.eat(&Tok::RParen) {
                                break;
                            }
                            self.expect(&Tok::Comma, "`,` or `)`")?;
                        }
                    }
                    e = Expr::Apply(Box::new(e), args);
                }
                Some(Tok::Dot) if matches!(self.peek_at(1), Some(Tok::Ident(s)) if !is_keyword(s)) =>
                {
                    self.bump();
                    e = Expr::Dot(Box::new(e), self.binder_name()?);
                }
                _ => return Ok(e),
            }
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(Tok::Int(v)) => {
                let v = *v;
                self.bump();
                Ok(Expr::IntLit(v))
            }
            Some(Tok::Hash) => {
                self.bump();
                if self.eat(&Tok::Dot) {
                    let dim = self.dim_path()?;
                    Ok(Expr::Hash(Some(Box::new(dim))))
                } else {
                    Ok(Expr::Hash(None))
                }
            }
            Some(Tok::LParen) => {
                self.bump();
                let e = self.expr()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(e)
            }
            Some(Tok::LBracket) => {
                self.bump();
                let mut entries = Vec::new();
                if !self.eat(&Tok::RBracket) {
                    loop {
                        let dim = self.expr()?;
                        self.expect(&Tok::Colon, "`:`")?;
                        let tag = self.expr()?;
                        entries.push((dim, tag));
                        if self.eat(&Tok::RBracket) {
                            break;
                        }
                        self.expect(&Tok::Comma, "`,` or `]`")?;
                    }
                }
                Ok(Expr::CtxLit(entries))
            }
            Some(Tok::LBrace) => {
                self.bump();
                let mut members = Vec::new();
                loop {
                    members.push(self.expr()?);
                    if self.eat(&Tok::RBrace) {
                        break;
                    }
                    self.expect(&Tok::Comma, "`,` or `}`")?;
                }
                Ok(Expr::CtxSetLit(members))
            }
            Some(Tok::Ident(s)) => match s.as_str() {
                "true" | "T" => {
                    self.bump();
                    Ok(Expr::BoolLit(true))
                }
                "false" | "F" => {
                    self.bump();
                    Ok(Expr::BoolLit(false))
                }
                "if" => {
                    self.bump();
                    let c = self.expr()?;
                    self.expect_word("then")?;
                    let t = self.expr()?;
                    self.expect_word("else")?;
                    let e = self.expr()?;
                    self.expect_word("fi")?;
                    Ok(Expr::if_(c, t, e))
                }
                w if is_keyword(w) => Err(self.err(format!("`{w}` cannot start an expression"))),
                _ => {
                    let name = s.clone();
                    self.bump();
                    Ok(Expr::Id(name))
                }
            },
            _ => Err(self.err(format!("expected an expression, found {}", self.found()))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::ast::{BinOpKind as B, UnOpKind as U};

    fn p(src: &str) -> Expr {
        parse(src).unwrap()
    }

    #[test]
    fn precedence_ladder() {
        assert_eq!(
            p("next x + 1"),
            Expr::binop(
                B::Add,
                None,
                Expr::unop(U::Next, None, Expr::id("x")),
                Expr::int(1)
            )
        );
        assert_eq!(
            p("a fby b fby c"),
            Expr::binop(
                B::Fby,
                None,
                Expr::id("a"),
                Expr::binop(B::Fby, None, Expr::id("b"), Expr::id("c"))
            )
        );
        assert_eq!(
            p("x wvr y upon z"),
            Expr::binop(
                B::Upon,
                None,
                Expr::binop(B::Wvr, None, Expr::id("x"), Expr::id("y")),
                Expr::id("z")
            )
        );
        assert_eq!(
            p("not a == b"),
            Expr::unop(
                U::Not,
                None,
                Expr::binop(B::Eq, None, Expr::id("a"), Expr::id("b"))
            )
        );
        assert_eq!(
            p("a or b and c"),
            Expr::binop(
                B::Or,
                None,
                Expr::id("a"),
                Expr::binop(B::And, None, Expr::id("b"), Expr::id("c"))
            )
        );
    }

    #[test]
    fn navigation_and_query() {
        assert_eq!(
            p("x @.d #.d + 1"),
            Expr::AtDim(
                Box::new(Expr::id("x")),
                Box::new(Expr::id("d")),
                Box::new(Expr::binop(
                    B::Add,
                    None,
                    Expr::Hash(Some(Box::new(Expr::id("d")))),
                    Expr::int(1)
                ))
            )
        );
        assert_eq!(
            p("x @ [d:1, e:2]"),
            Expr::AtCtx(
                Box::new(Expr::id("x")),
                Box::new(Expr::CtxLit(vec![
                    (Expr::id("d"), Expr::int(1)),
                    (Expr::id("e"), Expr::int(2)),
                ]))
            )
        );
        assert_eq!(
            p("x @ {[d:1], [d:2]}"),
            Expr::AtCtx(
                Box::new(Expr::id("x")),
                Box::new(Expr::CtxSetLit(vec![
                    Expr::CtxLit(vec![(Expr::id("d"), Expr::int(1))]),
                    Expr::CtxLit(vec![(Expr::id("d"), Expr::int(2))]),
                ]))
            )
        );
    }

    #[test]
    fn suffixes_and_dots() {
        assert_eq!(
            p("x fby.d y"),
            Expr::binop(B::Fby, Some("d"), Expr::id("x"), Expr::id("y"))
        );
        assert_eq!(
            p("first.d.e x"),
            Expr::unop(U::First, Some("d.e"), Expr::id("x"))
        );
        assert_eq!(
            p("#.d.e"),
            Expr::Hash(Some(Box::new(Expr::Dot(
                Box::new(Expr::id("d")),
                "e".into()
            ))))
        );
    }

    #[test]
    fn where_and_defs() {
        let e = p("y where dimension d; x = 1; f(a, b) = a + b; y = f(x, 2); end");
        match e {
            Expr::Where(head, defs) => {
                assert_eq!(*head, Expr::id("y"));
                assert_eq!(defs.len(), 4);
                assert_eq!(defs[0], QDef::DimDecl("d".into()));
                assert!(matches!(&defs[2], QDef::FuncDef(n, ps, _) if n == "f" && ps.len() == 2));
            }
            other => panic!("expected where, got {other:?}"),
        }
    }

    #[test]
    fn interactive_lines() {
        assert_eq!(
            parse_line("dimension t").unwrap(),
            LineItem::Def(QDef::DimDecl("t".into()))
        );
        assert_eq!(
            parse_line("x = 1 fby.d x + 1;").unwrap(),
            LineItem::Def(QDef::VarDef("x".into(), parse("1 fby.d x + 1").unwrap()))
        );
        assert!(matches!(
            parse_line("f(n) = n * 2").unwrap(),
            LineItem::Def(QDef::FuncDef(..))
        ));
        assert!(matches!(
            parse_line("f(n) == 2").unwrap(),
            LineItem::Expr(_)
        ));
    }

    #[test]
    fn rejects() {
        assert!(parse("").is_err());
        assert!(parse("x +").is_err());
        assert!(parse("if x then y fi").is_err());
        assert!(parse("x where y = 1 end").is_err());
        assert!(parse("fby").is_err());
        assert!(parse("x @ ").is_err());
        assert!(parse("{}").is_err());
        assert!(parse("x where dimension fby; end").is_err());
    }

    #[test]
    fn nesting_is_bounded() {
        let deep =
            |n: usize, open: &str, close: &str| format!("{}x{}", open.repeat(n), close.repeat(n));
        assert!(parse(&deep(100, "(", ")")).is_ok());
        for text in [
            deep(10_000, "(", ")"),
            deep(10_000, "neg ", ""),
            deep(10_000, "next ", ""),
            "1 fby ".repeat(10_000) + "1",
        ] {
            let err = parse(&text).unwrap_err();
            assert!(err.to_string().contains("nesting"), "{err}");
        }
    }
}
