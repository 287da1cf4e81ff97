//! Route agreement and the `#`/`@` laws.
//!
//! Each operator is computed over the same inputs by the pipelined walk
//! and by the indexed `@`/`#` equations; the two results must agree at
//! every probed index, markers included.

use crate::harness::gen::StreamGen;
use crate::harness::report::{property, Report};
use crate::harness::route::{indexed_route, pipelined_route, Binary, Unary};
use crate::ops::indexed::{at_op, hash, IndexedStream};
use crate::stream::BoundedStream;
use crate::value::Value;

/// Observable equality: same value at every index from below the origin
/// to past both extents.
fn same_profile(a: &BoundedStream, b: &BoundedStream) -> Result<(), String> {
    let hi = a.len().max(b.len()) as i64 + 2;
    for i in -2..=hi {
        if a.at(i) != b.at(i) {
            return Err(format!("at {i}: {} != {} ({a} vs {b})", a.at(i), b.at(i)));
        }
    }
    Ok(())
}

#[derive(Clone, Copy)]
enum Inputs {
    Ints,
    Bools,
    IntPair,
    SubjectCondition,
    BoolPair,
}

fn unary_agreement(
    name: &'static str,
    seed: u64,
    cases: usize,
    inputs: Inputs,
    p: Unary,
    i: Unary,
) -> crate::harness::report::PropertyReport {
    let mut g = StreamGen::new(seed);
    property(format!("{name}: routes agree"), cases, move |_| {
        let x = match inputs {
            Inputs::Bools => g.bools(),
            _ => g.ints(),
        };
        let a = p(&x).map_err(|e| format!("pipelined: {e}"))?;
        let b = i(&x).map_err(|e| format!("indexed: {e}"))?;
        same_profile(&a, &b).map_err(|e| format!("{e} for X = {x}"))
    })
}

fn binary_agreement(
    name: &'static str,
    seed: u64,
    cases: usize,
    inputs: Inputs,
    p: Binary,
    i: Binary,
) -> crate::harness::report::PropertyReport {
    let mut g = StreamGen::new(seed);
    property(format!("{name}: routes agree"), cases, move |case| {
        let (x, y) = match inputs {
            Inputs::IntPair => g.int_pair(),
            Inputs::BoolPair => {
                // every third case feeds truthy integers through the
                // logical kind rule
                if case % 3 == 2 {
                    let (a, b) = g.subject_condition();
                    (a, b)
                } else {
                    g.bool_pair()
                }
            }
            _ => g.subject_condition(),
        };
        let a = p(&x, &y).map_err(|e| format!("pipelined: {e}"))?;
        let b = i(&x, &y).map_err(|e| format!("indexed: {e}"))?;
        same_profile(&a, &b).map_err(|e| format!("{e} for X = {x}, Y = {y}"))
    })
}

pub fn check_propositions(seed: u64, cases: usize) -> Report {
    let mut report = Report::new(format!("propositions: seed {seed}, {cases} cases each"));

    report.push(property("# yields the demanded tag", 64, |i| {
        let i = i as i64;
        if hash(i) != Value::Int(i) {
            return Err(format!("hash({i}) = {}", hash(i)));
        }
        if hash(-1 - i) != Value::Bod {
            return Err(format!("hash({}) not bod", -1 - i));
        }
        Ok(())
    }));

    let mut g = StreamGen::new(seed ^ 0x20);
    report.push(property("X @ # == X", cases, move |_| {
        let x = IndexedStream::new(g.ints());
        let idx = IndexedStream::new(BoundedStream::new(
            (0..x.len() as i64).map(Value::Int).collect(),
        ));
        for i in -2..=(x.len() as i64 + 2) {
            let got = at_op(&x, &idx, i);
            if got != x.at(i) {
                return Err(format!("at {i}: {got} != {}", x.at(i)));
            }
        }
        Ok(())
    }));

    let mut g = StreamGen::new(seed ^ 0x21);
    report.push(property(
        "X @ reverse # == reverse X on the defined region",
        cases,
        move |_| {
            let s = g.ints();
            let x = IndexedStream::new(s.clone());
            let rev: Vec<Value> = (0..s.defined_len() as i64).rev().map(Value::Int).collect();
            let idx = IndexedStream::new(BoundedStream::new(rev));
            let want = s.reverse();
            for i in 0..s.defined_len() as i64 {
                let got = at_op(&x, &idx, i);
                if got != want.at(i) {
                    return Err(format!("at {i}: {got} != {}", want.at(i)));
                }
            }
            Ok(())
        },
    ));

    let p = pipelined_route();
    let i = indexed_route();

    // the six core stream operators
    report.push(unary_agreement(
        "first",
        seed ^ 0x30,
        cases,
        Inputs::Ints,
        p.first,
        i.first,
    ));
    report.push(unary_agreement(
        "next",
        seed ^ 0x31,
        cases,
        Inputs::Ints,
        p.next,
        i.next,
    ));
    report.push(binary_agreement(
        "fby",
        seed ^ 0x32,
        cases,
        Inputs::IntPair,
        p.fby,
        i.fby,
    ));
    report.push(binary_agreement(
        "wvr",
        seed ^ 0x33,
        cases,
        Inputs::SubjectCondition,
        p.wvr,
        i.wvr,
    ));
    report.push(binary_agreement(
        "asa",
        seed ^ 0x34,
        cases,
        Inputs::SubjectCondition,
        p.asa,
        i.asa,
    ));
    report.push(binary_agreement(
        "upon",
        seed ^ 0x35,
        cases,
        Inputs::SubjectCondition,
        p.upon,
        i.upon,
    ));

    // the extended inventory
    report.push(unary_agreement(
        "second",
        seed ^ 0x40,
        cases,
        Inputs::Ints,
        p.second,
        i.second,
    ));
    report.push(unary_agreement(
        "last",
        seed ^ 0x41,
        cases,
        Inputs::Ints,
        p.last,
        i.last,
    ));
    report.push(unary_agreement(
        "prelast",
        seed ^ 0x42,
        cases,
        Inputs::Ints,
        p.prelast,
        i.prelast,
    ));
    report.push(unary_agreement(
        "prev",
        seed ^ 0x43,
        cases,
        Inputs::Ints,
        p.prev,
        i.prev,
    ));
    report.push(unary_agreement(
        "neg",
        seed ^ 0x44,
        cases,
        Inputs::Ints,
        p.neg,
        i.neg,
    ));
    report.push(unary_agreement(
        "not",
        seed ^ 0x45,
        cases,
        Inputs::Bools,
        p.not,
        i.not,
    ));
    report.push(binary_agreement(
        "pby",
        seed ^ 0x46,
        cases,
        Inputs::IntPair,
        p.pby,
        i.pby,
    ));
    report.push(binary_agreement(
        "rwvr",
        seed ^ 0x47,
        cases,
        Inputs::SubjectCondition,
        p.rwvr,
        i.rwvr,
    ));
    report.push(binary_agreement(
        "nwvr",
        seed ^ 0x48,
        cases,
        Inputs::SubjectCondition,
        p.nwvr,
        i.nwvr,
    ));
    report.push(binary_agreement(
        "nrwvr",
        seed ^ 0x49,
        cases,
        Inputs::SubjectCondition,
        p.nrwvr,
        i.nrwvr,
    ));
    report.push(binary_agreement(
        "nasa",
        seed ^ 0x4A,
        cases,
        Inputs::SubjectCondition,
        p.nasa,
        i.nasa,
    ));
    report.push(binary_agreement(
        "ala",
        seed ^ 0x4B,
        cases,
        Inputs::SubjectCondition,
        p.ala,
        i.ala,
    ));
    report.push(binary_agreement(
        "nala",
        seed ^ 0x4C,
        cases,
        Inputs::SubjectCondition,
        p.nala,
        i.nala,
    ));
    report.push(binary_agreement(
        "rupon",
        seed ^ 0x4D,
        cases,
        Inputs::SubjectCondition,
        p.rupon,
        i.rupon,
    ));
    report.push(binary_agreement(
        "nupon",
        seed ^ 0x4E,
        cases,
        Inputs::SubjectCondition,
        p.nupon,
        i.nupon,
    ));
    report.push(binary_agreement(
        "nrupon",
        seed ^ 0x4F,
        cases,
        Inputs::SubjectCondition,
        p.nrupon,
        i.nrupon,
    ));
    report.push(binary_agreement(
        "and",
        seed ^ 0x50,
        cases,
        Inputs::BoolPair,
        p.and,
        i.and,
    ));
    report.push(binary_agreement(
        "or",
        seed ^ 0x51,
        cases,
        Inputs::BoolPair,
        p.or,
        i.or,
    ));
    report.push(binary_agreement(
        "xor",
        seed ^ 0x52,
        cases,
        Inputs::BoolPair,
        p.xor,
        i.xor,
    ));

    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn propositions_hold() {
        let r = check_propositions(42, 60);
        assert!(r.passed(), "{r}");
        assert_eq!(r.properties.len(), 28);
    }
}
