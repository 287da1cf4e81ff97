//! Finite bounded streams with `bod`/`eod` out-of-range semantics.

use crate::value::Value;
use std::fmt;

/// Marker kind returned by `at` past the defined region. Forward operator
/// results end in `Eod`; reverse operators walk toward the stream origin,
/// so their results end in `Bod`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Marker {
    Eod,
    Bod,
}

impl Marker {
    pub fn value(self) -> Value {
        match self {
            Marker::Eod => Value::Eod,
            Marker::Bod => Value::Bod,
        }
    }
}

/// A finite stream of marker-free values.
///
/// `at(i)` yields `Bod` for `i < lead` (always for `i < 0`), the element at
/// `i - lead` inside the defined region, and the trailing marker beyond it.
/// Canonical streams (literals, generated fixtures) have `lead == 0` and an
/// `Eod` trailing marker; `prev` results carry a leading out-of-range slot
/// and reverse-operator results trail into `Bod`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedStream {
    lead: usize,
    elements: Vec<Value>,
    trailing: Marker,
}

impl BoundedStream {
    /// Canonical stream: no lead, `Eod` trailing. Panics if any element is
    /// a marker; markers are never interior.
    pub fn new(elements: Vec<Value>) -> Self {
        Self::with(0, elements, Marker::Eod)
    }

    pub fn with(lead: usize, elements: Vec<Value>, trailing: Marker) -> Self {
        assert!(
            elements.iter().all(|v| !v.is_marker()),
            "stream elements must be marker-free"
        );
        BoundedStream {
            lead,
            elements,
            trailing,
        }
    }

    pub fn empty() -> Self {
        Self::new(Vec::new())
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        Self::new(xs.iter().map(|&k| Value::Int(k)).collect())
    }

    pub fn from_bools(bs: &[bool]) -> Self {
        Self::new(bs.iter().map(|&b| Value::Bool(b)).collect())
    }

    /// Constant stream of `n` copies of `v`.
    pub fn constant(v: Value, n: usize) -> Self {
        Self::new(vec![v; n])
    }

    /// Random access with out-of-range markers: `Bod` below the defined
    /// region, the trailing marker at or past its end.
    pub fn at(&self, i: i64) -> Value {
        if i < 0 {
            return Value::Bod;
        }
        let i = i as usize;
        if i < self.lead {
            Value::Bod
        } else if i < self.lead + self.elements.len() {
            self.elements[i - self.lead].clone()
        } else {
            self.trailing.value()
        }
    }

    /// Total extent under `at`: the first index that yields the trailing
    /// marker. Includes the leading out-of-range slots.
    pub fn len(&self) -> usize {
        self.lead + self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn lead(&self) -> usize {
        self.lead
    }

    pub fn trailing(&self) -> Marker {
        self.trailing
    }

    /// The defined (marker-free) values in order.
    pub fn defined_values(&self) -> &[Value] {
        &self.elements
    }

    pub fn defined_len(&self) -> usize {
        self.elements.len()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Value> {
        self.elements.iter()
    }

    /// Defined region reversed into a canonical stream.
    pub fn reverse(&self) -> Self {
        let mut e = self.elements.clone();
        e.reverse();
        Self::new(e)
    }
}

impl fmt::Display for BoundedStream {
    /// Literal format: bracketed, whitespace-separated, markers implicit.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// Parses the textual stream literal format: `[1 2 3]`, `[T F T]`,
/// whitespace- or comma-separated, signs allowed on integers. Markers are
/// implicit and not accepted as elements.
pub fn parse_stream_literal(text: &str) -> Result<BoundedStream, String> {
    let t = text.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|rest| rest.strip_suffix(']'))
        .ok_or_else(|| "stream literal must be bracketed".to_string())?;
    let mut elements = Vec::new();
    for tok in inner.split(|c: char| c.is_whitespace() || c == ',') {
        if tok.is_empty() {
            continue;
        }
        let v = match tok {
            "T" | "true" => Value::Bool(true),
            "F" | "false" => Value::Bool(false),
            "bod" | "eod" => {
                return Err(format!(
                    "marker `{tok}` cannot appear inside a stream literal"
                ))
            }
            _ => Value::Int(
                tok.parse::<i64>()
                    .map_err(|_| format!("bad stream element `{tok}`"))?,
            ),
        };
        elements.push(v);
    }
    Ok(BoundedStream::new(elements))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn at_bounds() {
        let x = BoundedStream::from_ints(&(1..=10).collect::<Vec<_>>());
        assert_eq!(x.at(0), Value::Int(1));
        assert_eq!(x.at(9), Value::Int(10));
        assert_eq!(x.at(-1), Value::Bod);
        assert_eq!(x.at(10), Value::Eod);
        assert_eq!(x.at(11), Value::Eod);
        assert_eq!(x.len(), 10);
    }

    #[test]
    fn lead_and_trailing() {
        let s = BoundedStream::with(1, vec![Value::Int(1), Value::Int(2)], Marker::Eod);
        assert_eq!(s.at(0), Value::Bod);
        assert_eq!(s.at(1), Value::Int(1));
        assert_eq!(s.at(3), Value::Eod);
        assert_eq!(s.len(), 3);
        let r = BoundedStream::with(0, vec![Value::Int(9)], Marker::Bod);
        assert_eq!(r.at(1), Value::Bod);
        assert_eq!(r.at(-1), Value::Bod);
    }

    #[test]
    fn reverse_involution() {
        let x = BoundedStream::from_ints(&[1, 2, 3]);
        assert_eq!(x.reverse().defined_values()[0], Value::Int(3));
        assert_eq!(x.reverse().reverse(), x);
        assert_eq!(BoundedStream::empty().reverse(), BoundedStream::empty());
    }

    #[test]
    fn literal_round_trip() {
        let s = parse_stream_literal("[1 2 3]").unwrap();
        assert_eq!(s, BoundedStream::from_ints(&[1, 2, 3]));
        assert_eq!(s.to_string(), "[1 2 3]");
        let b = parse_stream_literal("[T, F, T]").unwrap();
        assert_eq!(b, BoundedStream::from_bools(&[true, false, true]));
        assert_eq!(
            parse_stream_literal("[-5 7]").unwrap().at(0),
            Value::Int(-5)
        );
        assert!(parse_stream_literal("1 2").is_err());
        assert!(parse_stream_literal("[eod]").is_err());
        assert!(parse_stream_literal("[x]").is_err());
        assert_eq!(parse_stream_literal("[]").unwrap(), BoundedStream::empty());
    }

    #[test]
    #[should_panic(expected = "marker-free")]
    fn no_interior_markers() {
        BoundedStream::new(vec![Value::Int(1), Value::Eod]);
    }
}
