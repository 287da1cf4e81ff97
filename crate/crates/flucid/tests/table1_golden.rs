//! The reference table, frozen: X = 1..10 against Y = [T F F T F F T T F T].
//! Every row is checked on the two kernel routes and on the evaluator, so
//! a regression in any one implementation breaks against the fixed rows,
//! not against a sibling.

mod common;

use common::{run_stream, stream_expr};
use flucid::harness::table1;
use flucid::{BoundedStream, Value};

fn iv(xs: &[i64]) -> Vec<Value> {
    xs.iter().map(|&x| Value::Int(x)).collect()
}

fn bv(bs: &[u8]) -> Vec<Value> {
    bs.iter().map(|&b| Value::Bool(b != 0)).collect()
}

/// `(operator expression, expected defined values, expected lead)`.
fn golden() -> Vec<(&'static str, Vec<Value>, usize)> {
    let y = || bv(&[1, 0, 0, 1, 0, 0, 1, 1, 0, 1]);
    vec![
        ("first.d x", iv(&[1; 10]), 0),
        ("second.d x", iv(&[2; 9]), 0),
        ("last.d x", iv(&[10; 10]), 0),
        ("prelast.d x", iv(&[9; 10]), 0),
        ("next.d x", iv(&[2, 3, 4, 5, 6, 7, 8, 9, 10]), 0),
        ("prev.d x", iv(&[1, 2, 3, 4, 5, 6, 7, 8, 9]), 1),
        (
            "x fby.d y",
            {
                let mut v = iv(&[1]);
                v.extend(y());
                v
            },
            0,
        ),
        (
            "x pby.d y",
            {
                let mut v = y();
                v.extend(iv(&[1]));
                v
            },
            0,
        ),
        ("x wvr.d y", iv(&[1, 4, 7, 8, 10]), 0),
        ("x rwvr.d y", iv(&[10, 8, 7, 4, 1]), 0),
        ("x nwvr.d y", iv(&[2, 3, 5, 6, 9]), 0),
        ("x nrwvr.d y", iv(&[9, 6, 5, 3, 2]), 0),
        ("x asa.d y", iv(&[1; 10]), 0),
        ("x nasa.d y", iv(&[2; 10]), 0),
        ("x ala.d y", iv(&[10; 10]), 0),
        ("x nala.d y", iv(&[9; 10]), 0),
        ("x upon.d y", iv(&[1, 2, 2, 2, 3, 3, 3, 4, 5, 5]), 0),
        ("x rupon.d y", iv(&[10, 9, 9, 8, 7, 7, 7, 6, 6, 6]), 0),
        ("x nupon.d y", iv(&[1, 1, 2, 3, 3, 4, 5, 5, 5, 6, 6]), 0),
        ("x nrupon.d y", iv(&[10, 10, 9, 9, 9, 8, 7, 7, 6, 5, 5]), 0),
        ("neg x", iv(&[-1, -2, -3, -4, -5, -6, -7, -8, -9, -10]), 0),
        ("not y", bv(&[0, 1, 1, 0, 1, 1, 0, 0, 1, 0]), 0),
        // The printed reference table shows bitwise integers for the
        // logical rows; the logical definitions give these values.
        ("x and y", iv(&[1, 0, 0, 1, 0, 0, 1, 1, 0, 1]), 0),
        ("x or y", iv(&[1; 10]), 0),
        ("x xor y", iv(&[0, 1, 1, 0, 1, 1, 0, 0, 1, 0]), 0),
    ]
}

#[test]
fn both_kernel_routes_reproduce_every_row() {
    let report = table1::check_table1();
    assert!(report.passed(), "{report}");
}

#[test]
fn the_evaluator_reproduces_every_row() {
    let (x, y) = table1::fixture();
    let defs = format!("x = {}; y = {};", stream_expr(&x), stream_expr(&y));
    for (op, expected, lead) in golden() {
        let got = run_stream(&format!("{op} where {defs} end"));
        assert_eq!(got.defined_values(), &expected[..], "row `{op}`");
        assert_eq!(got.lead(), lead, "row `{op}` lead");
    }
}

#[test]
fn the_fixture_is_what_the_rows_assume() {
    let (x, y) = table1::fixture();
    assert_eq!(
        x,
        BoundedStream::from_ints(&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10])
    );
    assert_eq!(y.defined_values(), &bv(&[1, 0, 0, 1, 0, 0, 1, 1, 0, 1])[..]);
}
