//! Golden rows over the reference fixture.
//!
//! The fixture is the ten-element observation pair every operator is
//! illustrated with: X counts 1 to 10 and Y flags positions 1, 4, 7, 8,
//! and 10. Every row is checked against both routes. The `or` and `xor`
//! rows carry a note: the printed reference table shows bitwise integer
//! results there, while the logical definitions (which both routes
//! implement) yield 0/1 truth values.

use crate::harness::report::{PropertyReport, Report};
use crate::harness::route::{routes, Route};
use crate::ops::OpError;
use crate::stream::BoundedStream;
use crate::value::Value;

pub fn fixture() -> (BoundedStream, BoundedStream) {
    (
        BoundedStream::from_ints(&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10]),
        BoundedStream::from_bools(&[
            true, false, false, true, false, false, true, true, false, true,
        ]),
    )
}

fn iv(xs: &[i64]) -> Vec<Value> {
    xs.iter().map(|&x| Value::Int(x)).collect()
}

fn bv(bs: &[bool]) -> Vec<Value> {
    bs.iter().map(|&b| Value::Bool(b)).collect()
}

struct Row {
    name: &'static str,
    compute: fn(&Route, &BoundedStream, &BoundedStream) -> Result<BoundedStream, OpError>,
    expected: Vec<Value>,
    lead: usize,
    note: Option<&'static str>,
}

fn rows() -> Vec<Row> {
    let row =
        |name,
         compute: fn(&Route, &BoundedStream, &BoundedStream) -> Result<BoundedStream, OpError>,
         expected| Row {
            name,
            compute,
            expected,
            lead: 0,
            note: None,
        };
    vec![
        row("first X", |r, x, _| (r.first)(x), iv(&[1; 10])),
        row("second X", |r, x, _| (r.second)(x), iv(&[2; 9])),
        row("last X", |r, x, _| (r.last)(x), iv(&[10; 10])),
        row("prelast X", |r, x, _| (r.prelast)(x), iv(&[9; 10])),
        row(
            "next X",
            |r, x, _| (r.next)(x),
            iv(&[2, 3, 4, 5, 6, 7, 8, 9, 10]),
        ),
        Row {
            name: "prev X",
            compute: |r, x, _| (r.prev)(x),
            expected: iv(&[1, 2, 3, 4, 5, 6, 7, 8, 9]),
            lead: 1,
            note: None,
        },
        row("X fby Y", |r, x, y| (r.fby)(x, y), {
            let mut v = vec![Value::Int(1)];
            v.extend(bv(&[
                true, false, false, true, false, false, true, true, false, true,
            ]));
            v
        }),
        row("X pby Y", |r, x, y| (r.pby)(x, y), {
            let mut v = bv(&[
                true, false, false, true, false, false, true, true, false, true,
            ]);
            v.push(Value::Int(1));
            v
        }),
        row("X wvr Y", |r, x, y| (r.wvr)(x, y), iv(&[1, 4, 7, 8, 10])),
        row("X rwvr Y", |r, x, y| (r.rwvr)(x, y), iv(&[10, 8, 7, 4, 1])),
        row("X nwvr Y", |r, x, y| (r.nwvr)(x, y), iv(&[2, 3, 5, 6, 9])),
        row("X nrwvr Y", |r, x, y| (r.nrwvr)(x, y), iv(&[9, 6, 5, 3, 2])),
        row("X asa Y", |r, x, y| (r.asa)(x, y), iv(&[1; 10])),
        row("X nasa Y", |r, x, y| (r.nasa)(x, y), iv(&[2; 10])),
        row("X ala Y", |r, x, y| (r.ala)(x, y), iv(&[10; 10])),
        row("X nala Y", |r, x, y| (r.nala)(x, y), iv(&[9; 10])),
        row(
            "X upon Y",
            |r, x, y| (r.upon)(x, y),
            iv(&[1, 2, 2, 2, 3, 3, 3, 4, 5, 5]),
        ),
        row(
            "X rupon Y",
            |r, x, y| (r.rupon)(x, y),
            iv(&[10, 9, 9, 8, 7, 7, 7, 6, 6, 6]),
        ),
        row(
            "X nupon Y",
            |r, x, y| (r.nupon)(x, y),
            iv(&[1, 1, 2, 3, 3, 4, 5, 5, 5, 6, 6]),
        ),
        row(
            "X nrupon Y",
            |r, x, y| (r.nrupon)(x, y),
            iv(&[10, 10, 9, 9, 9, 8, 7, 7, 6, 5, 5]),
        ),
        row(
            "neg X",
            |r, x, _| (r.neg)(x),
            iv(&[-1, -2, -3, -4, -5, -6, -7, -8, -9, -10]),
        ),
        row(
            "not Y",
            |r, _, y| (r.not)(y),
            bv(&[
                false, true, true, false, true, true, false, false, true, false,
            ]),
        ),
        row(
            "X and Y",
            |r, x, y| (r.and)(x, y),
            iv(&[1, 0, 0, 1, 0, 0, 1, 1, 0, 1]),
        ),
        Row {
            name: "X or Y",
            compute: |r, x, y| (r.or)(x, y),
            expected: iv(&[1; 10]),
            lead: 0,
            note: Some("logical reading; the printed reference row shows bitwise integers"),
        },
        Row {
            name: "X xor Y",
            compute: |r, x, y| (r.xor)(x, y),
            expected: iv(&[0, 1, 1, 0, 1, 1, 0, 0, 1, 0]),
            lead: 0,
            note: Some("logical reading; the printed reference row shows bitwise integers"),
        },
    ]
}

pub fn check_table1() -> Report {
    let mut report = Report::new("golden rows: X = 1..10, Y = [T F F T F F T T F T]");
    let (x, y) = fixture();
    for row in rows() {
        let mut failures = Vec::new();
        for route in routes() {
            match (row.compute)(&route, &x, &y) {
                Ok(got) => {
                    if got.defined_values() != &row.expected[..] {
                        failures.push(format!(
                            "[{}] got {got}, want {}",
                            route.name,
                            BoundedStream::with(
                                0,
                                row.expected.clone(),
                                crate::stream::Marker::Eod
                            )
                        ));
                    } else if got.lead() != row.lead {
                        failures.push(format!(
                            "[{}] lead {}, want {}",
                            route.name,
                            got.lead(),
                            row.lead
                        ));
                    }
                }
                Err(e) => failures.push(format!("[{}] {e}", route.name)),
            }
        }
        report.push(PropertyReport {
            name: row.name.to_owned(),
            cases: 2,
            failure_count: failures.len(),
            failures,
            note: row.note.map(str::to_owned),
        });
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_rows_hold_on_both_routes() {
        let r = check_table1();
        assert!(r.passed(), "{r}");
        assert_eq!(r.properties.len(), 25);
    }
}
