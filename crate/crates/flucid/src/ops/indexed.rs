//! Random-access operator definitions through `@` and `#`.
//!
//! Each operator evaluates its index equation pointwise and materializes
//! the result over the operator's extent. The wvr family is driven by the
//! index streams `T` and `U` (`T = U fby U @ (T + 1)`,
//! `U = if Y then # else next U`), the upon family by the advance counter
//! `W = 0 fby (if Y then W + 1 else W)`; the internals are exposed for the
//! rank lemmas. Extents that the equations cannot reach (constant results,
//! `prev`'s dropped last element) come from the operators' prose
//! definitions: constant operators are as long as their input and `prev`
//! is bounded to `|X|`.

use super::{truthy, OpError};
use crate::stream::{BoundedStream, Marker};
use crate::value::{logical_not, logical_result, Value};

/// A stream viewed through random access only: the value at `i` is
/// `source.at(i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexedStream {
    source: BoundedStream,
}

impl IndexedStream {
    pub fn new(source: BoundedStream) -> Self {
        IndexedStream { source }
    }

    pub fn at(&self, i: i64) -> Value {
        self.source.at(i)
    }

    /// Total extent under `at` (first index yielding the trailing marker).
    pub fn len(&self) -> usize {
        self.source.len()
    }

    pub fn is_empty(&self) -> bool {
        self.source.is_empty()
    }

    pub fn stream(&self) -> &BoundedStream {
        &self.source
    }

    pub fn into_stream(self) -> BoundedStream {
        self.source
    }

    fn reversed(&self) -> IndexedStream {
        IndexedStream::new(self.source.reverse())
    }
}

impl From<BoundedStream> for IndexedStream {
    fn from(source: BoundedStream) -> Self {
        IndexedStream::new(source)
    }
}

impl From<&BoundedStream> for IndexedStream {
    fn from(source: &BoundedStream) -> Self {
        IndexedStream::new(source.clone())
    }
}

/// `#` at tag `i`: the tag itself for `i ≥ 0`, out of range below the
/// origin.
pub fn hash(i: i64) -> Value {
    if i >= 0 {
        Value::Int(i)
    } else {
        Value::Bod
    }
}

/// `(X @ Y)[i] = X[Y[i]]`. Markers in the index stream propagate; a
/// negative index resolves below `X`'s origin.
pub fn at_op(x: &IndexedStream, y: &IndexedStream, i: i64) -> Value {
    match y.at(i) {
        Value::Int(k) => x.at(k),
        m @ (Value::Bod | Value::Eod) => m,
        _ => Value::Bod,
    }
}

/// Evaluates `f` over tags `0..extent`, folding leading `bod` results into
/// the lead and stopping at the first marker after the defined region
/// starts.
fn collect(
    extent: usize,
    trailing: Marker,
    mut f: impl FnMut(i64) -> Result<Value, OpError>,
) -> Result<IndexedStream, OpError> {
    let mut lead = 0usize;
    let mut elements = Vec::new();
    for i in 0..extent {
        match f(i as i64)? {
            Value::Bod if elements.is_empty() => lead += 1,
            v if v.is_marker() => break,
            v => elements.push(v),
        }
    }
    Ok(IndexedStream::new(BoundedStream::with(
        lead, elements, trailing,
    )))
}

/// `first X = X @ 0`, constant over the input's extent.
pub fn i_first(x: &IndexedStream) -> IndexedStream {
    collect(x.len(), Marker::Eod, |_| Ok(x.at(0))).expect("infallible")
}

/// The element just before `eod`, constant over the input's extent.
pub fn i_last(x: &IndexedStream) -> IndexedStream {
    let n = x.len();
    collect(n, Marker::Eod, |_| Ok(x.at(n as i64 - 1))).expect("infallible")
}

/// `next X = X @ (# + 1)`.
pub fn i_next(x: &IndexedStream) -> IndexedStream {
    collect(x.len(), Marker::Eod, |i| Ok(x.at(i + 1))).expect("infallible")
}

/// `prev X = X @ (# - 1)` with the `# ≤ 0` out-of-range guard, bounded to
/// the input's extent (the last element is dropped, not shifted past it).
pub fn i_prev(x: &IndexedStream) -> IndexedStream {
    collect(x.len(), Marker::Eod, |i| {
        Ok(if i <= 0 { Value::Bod } else { x.at(i - 1) })
    })
    .expect("infallible")
}

/// `X fby Y = if # ≤ 0 then X else Y @ (# - 1)`.
pub fn i_fby(x: &IndexedStream, y: &IndexedStream) -> IndexedStream {
    collect(y.len() + 1, Marker::Eod, |i| {
        Ok(if i <= 0 { x.at(i) } else { y.at(i - 1) })
    })
    .expect("infallible")
}

/// `X pby Y = if iseod Y then first X else Y`: all of `Y`, then `X`'s
/// first element in the slot where `Y` ends.
pub fn i_pby(x: &IndexedStream, y: &IndexedStream) -> IndexedStream {
    collect(y.len() + 1, Marker::Eod, |i| {
        Ok(match y.at(i) {
            Value::Eod => x.at(0),
            v => v,
        })
    })
    .expect("infallible")
}

/// Index streams of the wvr family: `U[j]` is the nearest qualifying tag
/// at or after `j` (`U = if Y then # else next U`, resolved backward) and
/// `T` enumerates qualifying tags in order (`T = U fby U @ (T + 1)`).
/// `None` marks entries the equations leave undefined (the demand runs off
/// the end of `Y`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WvrInternals {
    pub u: Vec<Option<i64>>,
    pub t: Vec<i64>,
}

fn wvr_machine(
    x: &IndexedStream,
    y: &IndexedStream,
    keep_on: bool,
) -> Result<(IndexedStream, WvrInternals), OpError> {
    let n = y.len();
    let mut u: Vec<Option<i64>> = vec![None; n];
    let mut nearest: Option<i64> = None;
    for j in (0..n).rev() {
        if truthy(&y.at(j as i64))? == keep_on {
            nearest = Some(j as i64);
        }
        u[j] = nearest;
    }
    let mut t: Vec<i64> = Vec::new();
    let mut cur = if n == 0 { None } else { u[0] };
    while let Some(k) = cur {
        t.push(k);
        let succ = (k + 1) as usize;
        cur = if succ < n { u[succ] } else { None };
    }
    let mut elements = Vec::with_capacity(t.len());
    for &k in &t {
        match x.at(k) {
            v if v.is_marker() => break,
            v => elements.push(v),
        }
    }
    Ok((
        IndexedStream::new(BoundedStream::new(elements)),
        WvrInternals { u, t },
    ))
}

/// Reverse-direction machine: `U = if Y then # else prev U` carries the
/// nearest qualifying tag at or before `j`; `T = U pby U @ (T - 1)` is
/// walked from the end of `Y` toward the origin.
fn rwvr_machine(
    x: &IndexedStream,
    y: &IndexedStream,
    keep_on: bool,
) -> Result<(IndexedStream, WvrInternals), OpError> {
    let n = y.len();
    let mut u: Vec<Option<i64>> = Vec::with_capacity(n);
    let mut nearest: Option<i64> = None;
    for j in 0..n {
        if truthy(&y.at(j as i64))? == keep_on {
            nearest = Some(j as i64);
        }
        u.push(nearest);
    }
    let mut t: Vec<i64> = Vec::new();
    let mut cur = if n == 0 { None } else { u[n - 1] };
    while let Some(k) = cur {
        t.push(k);
        cur = if k >= 1 { u[(k - 1) as usize] } else { None };
    }
    let mut elements = Vec::with_capacity(t.len());
    for &k in &t {
        match x.at(k) {
            v if v.is_marker() => break,
            v => elements.push(v),
        }
    }
    Ok((
        IndexedStream::new(BoundedStream::with(0, elements, Marker::Bod)),
        WvrInternals { u, t },
    ))
}

/// `X wvr Y = X @ T`.
pub fn i_wvr(x: &IndexedStream, y: &IndexedStream) -> Result<IndexedStream, OpError> {
    Ok(wvr_machine(x, y, true)?.0)
}

/// `wvr` with its `T`/`U` index streams.
pub fn i_wvr_internals(
    x: &IndexedStream,
    y: &IndexedStream,
) -> Result<(IndexedStream, WvrInternals), OpError> {
    wvr_machine(x, y, true)
}

pub fn i_nwvr(x: &IndexedStream, y: &IndexedStream) -> Result<IndexedStream, OpError> {
    Ok(wvr_machine(x, y, false)?.0)
}

pub fn i_rwvr(x: &IndexedStream, y: &IndexedStream) -> Result<IndexedStream, OpError> {
    Ok(rwvr_machine(x, y, true)?.0)
}

pub fn i_nrwvr(x: &IndexedStream, y: &IndexedStream) -> Result<IndexedStream, OpError> {
    Ok(rwvr_machine(x, y, false)?.0)
}

/// `X asa Y = first (X wvr Y)`, constant over the input's extent.
pub fn i_asa(x: &IndexedStream, y: &IndexedStream) -> Result<IndexedStream, OpError> {
    let w = wvr_machine(x, y, true)?.0;
    collect(x.len(), Marker::Eod, |_| Ok(w.at(0)))
}

pub fn i_nasa(x: &IndexedStream, y: &IndexedStream) -> Result<IndexedStream, OpError> {
    let w = wvr_machine(x, y, false)?.0;
    collect(x.len(), Marker::Eod, |_| Ok(w.at(0)))
}

/// `X ala Y = last (X wvr Y)`, constant over the input's extent. With no
/// qualifying element the value never arrives and the result is eod
/// everywhere, not a bod lead.
pub fn i_ala(x: &IndexedStream, y: &IndexedStream) -> Result<IndexedStream, OpError> {
    let w = wvr_machine(x, y, true)?.0;
    let v = if w.is_empty() {
        Value::Eod
    } else {
        w.at(w.len() as i64 - 1)
    };
    collect(x.len(), Marker::Eod, |_| Ok(v.clone()))
}

pub fn i_nala(x: &IndexedStream, y: &IndexedStream) -> Result<IndexedStream, OpError> {
    let w = wvr_machine(x, y, false)?.0;
    let v = if w.is_empty() {
        Value::Eod
    } else {
        w.at(w.len() as i64 - 1)
    };
    collect(x.len(), Marker::Eod, |_| Ok(v.clone()))
}

/// The advance counter of the upon family: `n + 1` entries of
/// `W = 0 fby (if Y then W + 1 else W)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UponInternals {
    pub w: Vec<i64>,
}

fn upon_counter(y: &IndexedStream, advance_on: bool) -> Result<UponInternals, OpError> {
    let n = y.len();
    let mut w = Vec::with_capacity(n + 1);
    w.push(0i64);
    for i in 0..n {
        let prev = *w.last().expect("nonempty");
        let step = truthy(&y.at(i as i64))? == advance_on;
        w.push(if step { prev + 1 } else { prev });
    }
    Ok(UponInternals { w })
}

/// `X upon Y = X @ W`: one value per condition tag while `W` stays inside
/// `X`; when the final step did not advance, the value at the resting
/// index is addressed as well.
fn upon_machine(
    x: &IndexedStream,
    y: &IndexedStream,
    advance_on: bool,
    trailing: Marker,
) -> Result<(IndexedStream, UponInternals), OpError> {
    let n = y.len();
    let internals = upon_counter(y, advance_on)?;
    let w = IndexedStream::new(BoundedStream::new(
        internals.w.iter().map(|&k| Value::Int(k)).collect(),
    ));
    let mut elements = Vec::new();
    let mut complete = true;
    for i in 0..n {
        match at_op(x, &w, i as i64) {
            v if v.is_marker() => {
                complete = false;
                break;
            }
            v => elements.push(v),
        }
    }
    if complete && n > 0 && truthy(&y.at(n as i64 - 1))? != advance_on {
        match at_op(x, &w, n as i64) {
            v if v.is_marker() => {}
            v => elements.push(v),
        }
    }
    Ok((
        IndexedStream::new(BoundedStream::with(0, elements, trailing)),
        internals,
    ))
}

pub fn i_upon(x: &IndexedStream, y: &IndexedStream) -> Result<IndexedStream, OpError> {
    Ok(upon_machine(x, y, true, Marker::Eod)?.0)
}

/// `upon` with its `W` index stream.
pub fn i_upon_internals(
    x: &IndexedStream,
    y: &IndexedStream,
) -> Result<(IndexedStream, UponInternals), OpError> {
    upon_machine(x, y, true, Marker::Eod)
}

pub fn i_nupon(x: &IndexedStream, y: &IndexedStream) -> Result<IndexedStream, OpError> {
    Ok(upon_machine(x, y, false, Marker::Eod)?.0)
}

/// `W = 0 pby (if Y then W - 1 else W)`: the forward machine over both
/// streams reversed, trailing into `bod`.
pub fn i_rupon(x: &IndexedStream, y: &IndexedStream) -> Result<IndexedStream, OpError> {
    Ok(upon_machine(&x.reversed(), &y.reversed(), true, Marker::Bod)?.0)
}

pub fn i_nrupon(x: &IndexedStream, y: &IndexedStream) -> Result<IndexedStream, OpError> {
    Ok(upon_machine(&x.reversed(), &y.reversed(), false, Marker::Bod)?.0)
}

/// `neg X = (-x0, -x1, ...)` pointwise; booleans are a type error.
pub fn i_neg(x: &IndexedStream) -> Result<IndexedStream, OpError> {
    collect(x.len(), Marker::Eod, |i| match x.at(i) {
        Value::Int(k) => Ok(Value::Int(-k)),
        m if m.is_marker() => Ok(m),
        other => Err(OpError(format!(
            "neg expects integers, got {}",
            other.kind_name()
        ))),
    })
}

/// `not X` pointwise under the logical kind rule.
pub fn i_not(x: &IndexedStream) -> Result<IndexedStream, OpError> {
    collect(x.len(), Marker::Eod, |i| {
        let v = x.at(i);
        if v.is_marker() {
            return Ok(v);
        }
        let t = truthy(&v)?;
        Ok(logical_not(&v, t))
    })
}

fn zip_logical(
    x: &IndexedStream,
    y: &IndexedStream,
    f: impl Fn(bool, bool) -> bool,
) -> Result<IndexedStream, OpError> {
    collect(x.len().min(y.len()), Marker::Eod, |i| {
        let (a, b) = (x.at(i), y.at(i));
        if a.is_marker() {
            return Ok(a);
        }
        if b.is_marker() {
            return Ok(b);
        }
        Ok(logical_result(&a, &b, f(truthy(&a)?, truthy(&b)?)))
    })
}

pub fn i_and(x: &IndexedStream, y: &IndexedStream) -> Result<IndexedStream, OpError> {
    zip_logical(x, y, |a, b| a && b)
}

pub fn i_or(x: &IndexedStream, y: &IndexedStream) -> Result<IndexedStream, OpError> {
    zip_logical(x, y, |a, b| a || b)
}

/// `xor = not ((X and Y) or not (X or Y))`, composed from the equations.
pub fn i_xor(x: &IndexedStream, y: &IndexedStream) -> Result<IndexedStream, OpError> {
    i_not(&i_or(&i_and(x, y)?, &i_not(&i_or(x, y)?)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(xs: &[i64]) -> IndexedStream {
        IndexedStream::new(BoundedStream::from_ints(xs))
    }

    fn bools(bs: &[bool]) -> IndexedStream {
        IndexedStream::new(BoundedStream::from_bools(bs))
    }

    fn x10() -> IndexedStream {
        ints(&(1..=10).collect::<Vec<_>>())
    }

    fn y10() -> IndexedStream {
        bools(&[
            true, false, false, true, false, false, true, true, false, true,
        ])
    }

    #[test]
    fn hash_is_the_tag() {
        for i in 0..64 {
            assert_eq!(hash(i), Value::Int(i));
        }
        assert_eq!(hash(-2), Value::Bod);
    }

    #[test]
    fn at_op_examples() {
        let x = x10();
        let two = ints(&[2; 10]);
        assert_eq!(at_op(&x, &two, 5), Value::Int(3));
        let idx = ints(&(0..10).collect::<Vec<_>>());
        assert_eq!(at_op(&x, &idx, 4), Value::Int(5));
        let zero = ints(&[0; 10]);
        assert_eq!(at_op(&x, &zero, 9), Value::Int(1));
        assert_eq!(at_op(&x, &two, 12), Value::Eod);
        assert_eq!(at_op(&x, &ints(&[-3]), 0), Value::Bod);
    }

    #[test]
    fn prev_is_bounded_to_input_extent() {
        let p = i_prev(&x10());
        assert_eq!(p.at(0), Value::Bod);
        assert_eq!(p.at(1), Value::Int(1));
        assert_eq!(p.at(9), Value::Int(9));
        assert_eq!(p.at(10), Value::Eod);
        assert_eq!(p.len(), 10);
    }

    #[test]
    fn wvr_index_streams_on_the_golden_fixture() {
        let (w, ints_) = i_wvr_internals(&x10(), &y10()).unwrap();
        assert_eq!(ints_.t, vec![0, 3, 6, 7, 9]);
        assert_eq!(
            ints_.u,
            vec![
                Some(0),
                Some(3),
                Some(3),
                Some(3),
                Some(6),
                Some(6),
                Some(6),
                Some(7),
                Some(9),
                Some(9)
            ]
        );
        let got: Vec<Value> = w.stream().defined_values().to_vec();
        assert_eq!(
            got,
            BoundedStream::from_ints(&[1, 4, 7, 8, 10]).defined_values()
        );
    }

    #[test]
    fn rwvr_walks_from_the_end() {
        let r = i_rwvr(&x10(), &y10()).unwrap();
        assert_eq!(
            r.stream().defined_values(),
            BoundedStream::from_ints(&[10, 8, 7, 4, 1]).defined_values()
        );
        assert_eq!(r.at(5), Value::Bod);
    }

    #[test]
    fn upon_counter_on_the_golden_fixture() {
        let (r, internals) = i_upon_internals(&x10(), &y10()).unwrap();
        assert_eq!(internals.w, vec![0, 1, 1, 1, 2, 2, 2, 3, 4, 4, 5]);
        assert_eq!(
            r.stream().defined_values(),
            BoundedStream::from_ints(&[1, 2, 2, 2, 3, 3, 3, 4, 5, 5]).defined_values()
        );
    }

    #[test]
    fn empty_inputs() {
        let e = IndexedStream::new(BoundedStream::empty());
        assert!(i_first(&e).is_empty());
        assert!(i_last(&e).is_empty());
        assert!(i_wvr(&e, &e).unwrap().is_empty());
        assert!(i_upon(&e, &e).unwrap().is_empty());
        assert!(i_fby(&e, &ints(&[1, 2])).is_empty());
        assert_eq!(
            i_pby(&e, &ints(&[1, 2])).stream().defined_values(),
            BoundedStream::from_ints(&[1, 2]).defined_values()
        );
    }
}
