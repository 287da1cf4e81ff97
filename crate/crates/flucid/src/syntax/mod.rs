//! Source form of the language: lexing, parsing, printing, and the
//! rewrites that reduce surface forms to the core.

pub mod ast;
pub mod desugar;
pub mod generator;
pub mod lexer;
pub mod parser;
pub mod printer;

pub use ast::{BinOpKind, Expr, QDef, UnOpKind};
pub use desugar::{desugar, desugar_def, DesugarError};
pub use lexer::ParseError;
pub use parser::{parse, parse_line, LineItem};
pub use printer::print;
