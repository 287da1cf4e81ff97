//! Interpreter and verification harness for the Forensic Lucid / GIPL /
//! Lucx family of intensional dataflow languages.
//!
//! Streams are bounded observations with out-of-range markers at both
//! ends. Every stream operator is defined twice: as a pipelined walk over
//! the elements ([`ops::pipelined`]) and as a random-access equation over
//! `@` and `#` ([`ops::indexed`]); the harness checks the two routes
//! against each other and against the algebraic identities they must
//! satisfy. On top of the operators sit the demand-driven evaluator with
//! its context calculus and the forensic event combinators.

pub mod context;
pub mod eval;
pub mod forensic;
pub mod harness;
pub mod ops;
pub mod stream;
pub mod syntax;
pub mod value;

pub use context::{Context, ContextSet, DefEnv};
pub use eval::{EvalError, EvalErrorKind, EvalSession, ProgramError, DEFAULT_DIM};
pub use stream::{BoundedStream, Marker};
pub use value::Value;
