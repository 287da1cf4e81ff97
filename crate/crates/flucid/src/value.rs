//! Tagged value domain: stream elements plus the out-of-range markers.

use crate::context::Context;
use std::fmt;

/// A runtime value. `Bod` and `Eod` are the out-of-range markers returned
/// when indexing a bounded stream below its origin or past its end; they
/// compare equal only to themselves and never appear inside a `Seq`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Int(i64),
    Bool(bool),
    Ctx(Context),
    Seq(Vec<Value>),
    Bod,
    Eod,
}

impl Value {
    pub fn is_marker(&self) -> bool {
        matches!(self, Value::Bod | Value::Eod)
    }

    /// Truthiness coercion: booleans as-is, nonzero integers are true.
    /// Applied only inside logical operators and `if` conditions; other
    /// kinds do not coerce.
    pub fn truthy(&self) -> Option<bool> {
        match self {
            Value::Bool(b) => Some(*b),
            Value::Int(k) => Some(*k != 0),
            _ => None,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Value::Int(_) => "int",
            Value::Bool(_) => "bool",
            Value::Ctx(_) => "context",
            Value::Seq(_) => "sequence",
            Value::Bod => "bod",
            Value::Eod => "eod",
        }
    }
}

/// `is_eod(v)` — true iff `v` is the end-of-data marker.
pub fn is_eod(v: &Value) -> bool {
    matches!(v, Value::Eod)
}

/// `is_bod(v)` — true iff `v` is the beginning-of-data marker.
pub fn is_bod(v: &Value) -> bool {
    matches!(v, Value::Bod)
}

/// Result kind rule for binary logical operators: when either operand is
/// numeric the result is an integer 0/1, when both are booleans it stays
/// a boolean.
pub fn logical_result(a: &Value, b: &Value, out: bool) -> Value {
    match (a, b) {
        (Value::Bool(_), Value::Bool(_)) => Value::Bool(out),
        _ => Value::Int(out as i64),
    }
}

/// Logical negation under the same kind rule: `not` of an integer is the
/// integer 0/1, `not` of a boolean is a boolean.
pub fn logical_not(a: &Value, t: bool) -> Value {
    match a {
        Value::Bool(_) => Value::Bool(!t),
        _ => Value::Int(!t as i64),
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(k) => write!(f, "{k}"),
            Value::Bool(true) => write!(f, "T"),
            Value::Bool(false) => write!(f, "F"),
            Value::Ctx(c) => write!(f, "{c}"),
            Value::Seq(vs) => {
                write!(f, "(")?;
                for (i, v) in vs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, ")")
            }
            Value::Bod => write!(f, "bod"),
            Value::Eod => write!(f, "eod"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn markers_identity_only() {
        assert!(is_eod(&Value::Eod));
        assert!(!is_eod(&Value::Bod));
        assert!(!is_eod(&Value::Int(5)));
        assert!(is_bod(&Value::Bod));
        assert_ne!(Value::Bod, Value::Eod);
    }

    #[test]
    fn truthiness() {
        assert_eq!(Value::Bool(true).truthy(), Some(true));
        assert_eq!(Value::Int(0).truthy(), Some(false));
        assert_eq!(Value::Int(-3).truthy(), Some(true));
        assert_eq!(Value::Eod.truthy(), None);
        assert_eq!(Value::Seq(vec![]).truthy(), None);
    }

    #[test]
    fn logical_kind_rule() {
        assert_eq!(
            logical_result(&Value::Bool(true), &Value::Bool(false), true),
            Value::Bool(true)
        );
        assert_eq!(
            logical_result(&Value::Int(3), &Value::Bool(false), true),
            Value::Int(1)
        );
        assert_eq!(logical_not(&Value::Int(3), true), Value::Int(0));
        assert_eq!(logical_not(&Value::Bool(false), false), Value::Bool(true));
    }

    #[test]
    fn display() {
        assert_eq!(Value::Int(-7).to_string(), "-7");
        assert_eq!(Value::Bool(true).to_string(), "T");
        assert_eq!(Value::Eod.to_string(), "eod");
        assert_eq!(
            Value::Seq(vec![Value::Int(1), Value::Bool(false)]).to_string(),
            "(1, F)"
        );
    }
}
