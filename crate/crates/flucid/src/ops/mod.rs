//! Stream operators in two independently defined forms.
//!
//! `pipelined` walks element vectors by structural recursion/iteration,
//! following the displayed extensional definitions. `indexed` evaluates the
//! `@`/`#` random-access equations with explicit fixpoint index streams.
//! The equivalence harness cross-checks the two on defined values.

pub mod indexed;
pub mod pipelined;

use crate::value::Value;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct OpError(pub String);

/// Truth coercion for operator conditions; non-coercible kinds are a type
/// error.
pub(crate) fn truthy(v: &Value) -> Result<bool, OpError> {
    v.truthy()
        .ok_or_else(|| OpError(format!("cannot coerce {} to a truth value", v.kind_name())))
}
