//! Extensional operator definitions: direct structural iteration over the
//! defined element vectors. Reference implementation for the equivalence
//! harness.

use super::{truthy, OpError};
use crate::stream::{BoundedStream, Marker};
use crate::value::{logical_not, logical_result, Value};

/// Constant stream of the first element, as long as the input. Empty input
/// yields the empty stream.
pub fn p_first(x: &BoundedStream) -> BoundedStream {
    match x.defined_values().first() {
        // constant over the full extent under `at`, so that inputs
        // carrying a lead slot (prev results) keep their width
        Some(v) => BoundedStream::constant(v.clone(), x.len()),
        // no defined value: the slots stay out of range from the start
        None => BoundedStream::with(x.len(), Vec::new(), Marker::Eod),
    }
}

/// `second X = first next X`.
pub fn p_second(x: &BoundedStream) -> BoundedStream {
    p_first(&p_next(x))
}

/// Constant stream of the element just before `eod`, as long as the
/// input's extent under `at`.
pub fn p_last(x: &BoundedStream) -> BoundedStream {
    match x.defined_values().last() {
        Some(v) => BoundedStream::constant(v.clone(), x.len()),
        None => BoundedStream::with(x.len(), Vec::new(), Marker::Eod),
    }
}

/// `prelast X = last prev X`.
pub fn p_prelast(x: &BoundedStream) -> BoundedStream {
    p_last(&p_prev(x))
}

/// Drops the first element.
pub fn p_next(x: &BoundedStream) -> BoundedStream {
    BoundedStream::new(x.defined_values().iter().skip(1).cloned().collect())
}

/// Shifts right, dropping the last element: position 0 becomes out of range
/// and the total extent under `at` is preserved.
pub fn p_prev(x: &BoundedStream) -> BoundedStream {
    let n = x.defined_len();
    if n == 0 {
        return BoundedStream::empty();
    }
    BoundedStream::with(1, x.defined_values()[..n - 1].to_vec(), Marker::Eod)
}

/// `(x0, y0, y1, ...)`. With empty `X` there is no head to prepend and the
/// result is empty (the index form yields `eod` at tag 0).
pub fn p_fby(x: &BoundedStream, y: &BoundedStream) -> BoundedStream {
    let Some(head) = x.defined_values().first() else {
        return BoundedStream::empty();
    };
    let mut e = Vec::with_capacity(y.defined_len() + 1);
    e.push(head.clone());
    e.extend(y.defined_values().iter().cloned());
    BoundedStream::new(e)
}

/// `(y0, ..., yn, x0)`. With empty `X` the appended slot is out of range
/// and the result is just `Y`.
pub fn p_pby(x: &BoundedStream, y: &BoundedStream) -> BoundedStream {
    let mut e = y.defined_values().to_vec();
    if let Some(head) = x.defined_values().first() {
        e.push(head.clone());
    }
    BoundedStream::new(e)
}

fn filter_by(x: &BoundedStream, y: &BoundedStream, keep_on: bool) -> Result<Vec<Value>, OpError> {
    let n = x.defined_len().min(y.defined_len());
    let mut out = Vec::new();
    for i in 0..n {
        if truthy(&y.defined_values()[i])? == keep_on {
            out.push(x.defined_values()[i].clone());
        }
    }
    Ok(out)
}

/// Subsequence of `X` at the positions where `Y` holds, in order. All-false
/// `Y` yields the empty stream.
pub fn p_wvr(x: &BoundedStream, y: &BoundedStream) -> Result<BoundedStream, OpError> {
    Ok(BoundedStream::new(filter_by(x, y, true)?))
}

/// `wvr` in reverse order; the defined region trails into `bod`.
pub fn p_rwvr(x: &BoundedStream, y: &BoundedStream) -> Result<BoundedStream, OpError> {
    let mut e = filter_by(x, y, true)?;
    e.reverse();
    Ok(BoundedStream::with(0, e, Marker::Bod))
}

/// Subsequence of `X` where `Y` does not hold.
pub fn p_nwvr(x: &BoundedStream, y: &BoundedStream) -> Result<BoundedStream, OpError> {
    Ok(BoundedStream::new(filter_by(x, y, false)?))
}

/// `nwvr` in reverse order.
pub fn p_nrwvr(x: &BoundedStream, y: &BoundedStream) -> Result<BoundedStream, OpError> {
    let mut e = filter_by(x, y, false)?;
    e.reverse();
    Ok(BoundedStream::with(0, e, Marker::Bod))
}

fn constant_of(first: Option<Value>, n: usize) -> BoundedStream {
    match first {
        Some(v) => BoundedStream::constant(v, n),
        None => BoundedStream::empty(),
    }
}

/// Constant stream (input length) of the first `X` value where `Y` holds;
/// empty when no position qualifies.
pub fn p_asa(x: &BoundedStream, y: &BoundedStream) -> Result<BoundedStream, OpError> {
    let f = filter_by(x, y, true)?.first().cloned();
    Ok(constant_of(f, x.defined_len()))
}

/// Constant stream of the first `X` value where `Y` does not hold.
pub fn p_nasa(x: &BoundedStream, y: &BoundedStream) -> Result<BoundedStream, OpError> {
    let f = filter_by(x, y, false)?.first().cloned();
    Ok(constant_of(f, x.defined_len()))
}

/// Constant stream of the last `X` value where `Y` holds: `last (X wvr Y)`.
pub fn p_ala(x: &BoundedStream, y: &BoundedStream) -> Result<BoundedStream, OpError> {
    let f = filter_by(x, y, true)?.last().cloned();
    Ok(constant_of(f, x.defined_len()))
}

/// Constant stream of the last `X` value where `Y` does not hold.
pub fn p_nala(x: &BoundedStream, y: &BoundedStream) -> Result<BoundedStream, OpError> {
    let f = filter_by(x, y, false)?.last().cloned();
    Ok(constant_of(f, x.defined_len()))
}

/// The conditional-advance walk shared by the upon family: a cursor into
/// `X` advances exactly when the condition holds. One value is emitted per
/// condition position while the cursor is in bounds; when the final step
/// did not advance, the value at the resting cursor is emitted as well.
fn upon_walk(
    x: &BoundedStream,
    cond: &BoundedStream,
    advance_on: bool,
) -> Result<Vec<Value>, OpError> {
    let mut out = Vec::new();
    let mut cursor: i64 = 0;
    let n = cond.defined_len();
    for i in 0..n {
        match x.at(cursor) {
            v if v.is_marker() => return Ok(out),
            v => out.push(v),
        }
        if truthy(&cond.defined_values()[i])? == advance_on {
            cursor += 1;
        }
    }
    if n > 0 && truthy(&cond.defined_values()[n - 1])? != advance_on {
        match x.at(cursor) {
            v if v.is_marker() => {}
            v => out.push(v),
        }
    }
    Ok(out)
}

/// `X` advancing upon `Y`: repeats the current `X` value, moving to the
/// next one whenever `Y` holds.
pub fn p_upon(x: &BoundedStream, y: &BoundedStream) -> Result<BoundedStream, OpError> {
    Ok(BoundedStream::new(upon_walk(x, y, true)?))
}

/// Advances when `Y` does not hold.
pub fn p_nupon(x: &BoundedStream, y: &BoundedStream) -> Result<BoundedStream, OpError> {
    Ok(BoundedStream::new(upon_walk(x, y, false)?))
}

/// Retreats upon `Y`: the forward walk over both streams reversed; the
/// defined region trails into `bod`.
pub fn p_rupon(x: &BoundedStream, y: &BoundedStream) -> Result<BoundedStream, OpError> {
    Ok(BoundedStream::with(
        0,
        upon_walk(&x.reverse(), &y.reverse(), true)?,
        Marker::Bod,
    ))
}

/// Retreats when `Y` does not hold.
pub fn p_nrupon(x: &BoundedStream, y: &BoundedStream) -> Result<BoundedStream, OpError> {
    Ok(BoundedStream::with(
        0,
        upon_walk(&x.reverse(), &y.reverse(), false)?,
        Marker::Bod,
    ))
}

/// Elementwise arithmetic negation; negating a boolean is a type error.
pub fn p_neg(x: &BoundedStream) -> Result<BoundedStream, OpError> {
    let mut out = Vec::with_capacity(x.defined_len());
    for v in x.iter() {
        match v {
            Value::Int(k) => out.push(Value::Int(-k)),
            other => {
                return Err(OpError(format!(
                    "neg expects integers, got {}",
                    other.kind_name()
                )))
            }
        }
    }
    Ok(BoundedStream::new(out))
}

/// Elementwise logical negation under the kind rule (integers stay 0/1
/// integers, booleans stay booleans).
pub fn p_not(x: &BoundedStream) -> Result<BoundedStream, OpError> {
    let mut out = Vec::with_capacity(x.defined_len());
    for v in x.iter() {
        out.push(logical_not(v, truthy(v)?));
    }
    Ok(BoundedStream::new(out))
}

fn zip_logical(
    x: &BoundedStream,
    y: &BoundedStream,
    f: impl Fn(bool, bool) -> bool,
) -> Result<BoundedStream, OpError> {
    let n = x.defined_len().min(y.defined_len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let (a, b) = (&x.defined_values()[i], &y.defined_values()[i]);
        out.push(logical_result(a, b, f(truthy(a)?, truthy(b)?)));
    }
    Ok(BoundedStream::new(out))
}

pub fn p_and(x: &BoundedStream, y: &BoundedStream) -> Result<BoundedStream, OpError> {
    zip_logical(x, y, |a, b| a && b)
}

pub fn p_or(x: &BoundedStream, y: &BoundedStream) -> Result<BoundedStream, OpError> {
    zip_logical(x, y, |a, b| a || b)
}

/// `xor = not ((X and Y) or not (X or Y))`, expanded literally.
pub fn p_xor(x: &BoundedStream, y: &BoundedStream) -> Result<BoundedStream, OpError> {
    p_not(&p_or(&p_and(x, y)?, &p_not(&p_or(x, y)?)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(xs: &[i64]) -> BoundedStream {
        BoundedStream::from_ints(xs)
    }

    #[test]
    fn first_last_shapes() {
        let x = ints(&[1, 2, 3]);
        assert_eq!(p_first(&x), ints(&[1, 1, 1]));
        assert_eq!(p_last(&x), ints(&[3, 3, 3]));
        assert_eq!(p_second(&x), ints(&[2, 2]));
        // prev keeps the total extent, so the constant spans it
        assert_eq!(p_prelast(&x), ints(&[2, 2, 2]));
        assert_eq!(p_first(&BoundedStream::empty()), BoundedStream::empty());
        assert_eq!(p_last(&BoundedStream::empty()), BoundedStream::empty());
    }

    #[test]
    fn next_prev_shift() {
        let x = ints(&[1, 2, 3]);
        assert_eq!(p_next(&x), ints(&[2, 3]));
        let pv = p_prev(&x);
        assert_eq!(pv.at(0), Value::Bod);
        assert_eq!(pv.at(1), Value::Int(1));
        assert_eq!(pv.at(2), Value::Int(2));
        assert_eq!(pv.at(3), Value::Eod);
        assert_eq!(pv.len(), x.len());
        assert_eq!(p_prev(&ints(&[7])).defined_len(), 0);
        assert_eq!(p_prev(&ints(&[7])).len(), 1);
    }

    #[test]
    fn fby_pby_edges() {
        assert_eq!(p_fby(&ints(&[7]), &BoundedStream::empty()), ints(&[7]));
        assert_eq!(
            p_fby(&BoundedStream::empty(), &ints(&[1, 2])),
            BoundedStream::empty()
        );
        assert_eq!(
            p_pby(&BoundedStream::empty(), &ints(&[1, 2])),
            ints(&[1, 2])
        );
        assert_eq!(p_fby(&ints(&[9, 8]), &ints(&[1])), ints(&[9, 1]));
        assert_eq!(p_pby(&ints(&[9, 8]), &ints(&[1])), ints(&[1, 9]));
    }

    #[test]
    fn wvr_degenerate() {
        let x = ints(&[1, 2, 3]);
        let all_false = BoundedStream::from_bools(&[false, false, false]);
        let all_true = BoundedStream::from_bools(&[true, true, true]);
        assert_eq!(p_wvr(&x, &all_false).unwrap(), BoundedStream::empty());
        assert_eq!(p_wvr(&x, &all_true).unwrap(), x);
        assert_eq!(p_nwvr(&x, &all_true).unwrap(), BoundedStream::empty());
        assert_eq!(p_asa(&x, &all_false).unwrap(), BoundedStream::empty());
        assert_eq!(p_ala(&x, &all_true).unwrap(), ints(&[3, 3, 3]));
    }

    #[test]
    fn wvr_coercion_error() {
        let x = ints(&[1]);
        let bad = BoundedStream::new(vec![Value::Seq(vec![])]);
        assert!(p_wvr(&x, &bad).is_err());
        assert!(p_neg(&BoundedStream::from_bools(&[true])).is_err());
    }

    #[test]
    fn rupon_trails_into_bod() {
        let x = ints(&[1, 2]);
        let y = BoundedStream::from_bools(&[true, true]);
        let r = p_rupon(&x, &y).unwrap();
        assert_eq!(r.trailing(), Marker::Bod);
        assert_eq!(r.at(r.defined_len() as i64), Value::Bod);
    }
}
