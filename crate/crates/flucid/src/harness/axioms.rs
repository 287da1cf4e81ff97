//! Algebraic identities every operator route must satisfy.

use crate::harness::gen::StreamGen;
use crate::harness::report::{property, Report};
use crate::harness::route::{routes, Route};
use crate::stream::BoundedStream;

fn same_defined(route: &Route, lhs: &BoundedStream, rhs: &BoundedStream) -> Result<(), String> {
    if lhs.defined_values() == rhs.defined_values() {
        Ok(())
    } else {
        Err(format!("[{}] {lhs} != {rhs}", route.name))
    }
}

/// The asa family produces a constant stream over the subject's extent;
/// its value (and emptiness) must match the head of the filtered stream.
fn constant_matches(
    route: &Route,
    result: &BoundedStream,
    filtered: &BoundedStream,
    subject_len: usize,
) -> Result<(), String> {
    let vals = result.defined_values();
    if let Some(head) = vals.first() {
        if !vals.iter().all(|v| v == head) {
            return Err(format!("[{}] not constant: {result}", route.name));
        }
    }
    match filtered.defined_values().first() {
        None if vals.is_empty() => Ok(()),
        None => Err(format!(
            "[{}] filter selects nothing but result is {result}",
            route.name
        )),
        Some(head) if vals.first() == Some(head) && vals.len() == subject_len => Ok(()),
        Some(head) => Err(format!(
            "[{}] expected {subject_len} copies of {head}, got {result}",
            route.name
        )),
    }
}

type Check = Box<dyn FnMut(&Route) -> Result<(), String>>;

/// Checks one identity against both routes per case.
fn identity(
    name: &str,
    cases: usize,
    mut make: impl FnMut() -> Check,
) -> crate::harness::report::PropertyReport {
    property(name, cases, move |_| {
        let mut check = make();
        for route in routes() {
            check(&route)?;
        }
        Ok(())
    })
}

pub fn check_axioms(seed: u64, cases: usize) -> Report {
    let mut report = Report::new(format!("axioms: seed {seed}, {cases} cases each"));
    let e = |route: &Route, err: crate::ops::OpError| format!("[{}] {err}", route.name);

    let mut g = StreamGen::new(seed ^ 0x01);
    report.push(identity("first (first X) == first X", cases, move || {
        let x = g.ints();
        Box::new(move |r| {
            let fx = (r.first)(&x).map_err(|err| e(r, err))?;
            same_defined(r, &(r.first)(&fx).map_err(|err| e(r, err))?, &fx)
        })
    }));

    let mut g = StreamGen::new(seed ^ 0x02);
    report.push(identity("last (last X) == last X", cases, move || {
        let x = g.ints();
        Box::new(move |r| {
            let lx = (r.last)(&x).map_err(|err| e(r, err))?;
            same_defined(r, &(r.last)(&lx).map_err(|err| e(r, err))?, &lx)
        })
    }));

    let mut g = StreamGen::new(seed ^ 0x03);
    report.push(identity("first (X fby Y) == first X", cases, move || {
        let (x, y) = g.int_pair();
        Box::new(move |r| {
            let lhs =
                (r.first)(&(r.fby)(&x, &y).map_err(|err| e(r, err))?).map_err(|err| e(r, err))?;
            let rhs = (r.first)(&x).map_err(|err| e(r, err))?;
            // extents differ when |Y| + 1 != |X|; the identity is about
            // the constant value
            match (lhs.defined_values().first(), rhs.defined_values().first()) {
                (a, b) if a == b => Ok(()),
                (a, b) => Err(format!("[{}] {a:?} != {b:?}", r.name)),
            }
        })
    }));

    let mut g = StreamGen::new(seed ^ 0x04);
    report.push(identity(
        "next (X fby Y) == Y for nonempty X",
        cases,
        move || {
            let (mut x, y) = g.int_pair();
            if x.is_empty() {
                x = g.ints_of(1);
            }
            Box::new(move |r| {
                let lhs = (r.next)(&(r.fby)(&x, &y).map_err(|err| e(r, err))?)
                    .map_err(|err| e(r, err))?;
                same_defined(r, &lhs, &y)
            })
        },
    ));

    let mut g = StreamGen::new(seed ^ 0x05);
    report.push(identity("first X fby next X == X", cases, move || {
        let x = g.ints();
        Box::new(move |r| {
            let h = (r.first)(&x).map_err(|err| e(r, err))?;
            let t = (r.next)(&x).map_err(|err| e(r, err))?;
            same_defined(r, &(r.fby)(&h, &t).map_err(|err| e(r, err))?, &x)
        })
    }));

    let mut g = StreamGen::new(seed ^ 0x06);
    report.push(identity("second X == first (next X)", cases, move || {
        let x = g.ints();
        Box::new(move |r| {
            let lhs = (r.second)(&x).map_err(|err| e(r, err))?;
            let rhs =
                (r.first)(&(r.next)(&x).map_err(|err| e(r, err))?).map_err(|err| e(r, err))?;
            same_defined(r, &lhs, &rhs)
        })
    }));

    let mut g = StreamGen::new(seed ^ 0x07);
    report.push(identity("prelast X == last (prev X)", cases, move || {
        let x = g.ints();
        Box::new(move |r| {
            let lhs = (r.prelast)(&x).map_err(|err| e(r, err))?;
            let rhs = (r.last)(&(r.prev)(&x).map_err(|err| e(r, err))?).map_err(|err| e(r, err))?;
            same_defined(r, &lhs, &rhs)
        })
    }));

    let mut g = StreamGen::new(seed ^ 0x08);
    report.push(identity("X nwvr Y == X wvr (not Y)", cases, move || {
        let (x, y) = g.subject_condition();
        Box::new(move |r| {
            let lhs = (r.nwvr)(&x, &y).map_err(|err| e(r, err))?;
            let ny = (r.not)(&y).map_err(|err| e(r, err))?;
            same_defined(r, &lhs, &(r.wvr)(&x, &ny).map_err(|err| e(r, err))?)
        })
    }));

    let mut g = StreamGen::new(seed ^ 0x09);
    report.push(identity("X nrwvr Y == X rwvr (not Y)", cases, move || {
        let (x, y) = g.subject_condition();
        Box::new(move |r| {
            let lhs = (r.nrwvr)(&x, &y).map_err(|err| e(r, err))?;
            let ny = (r.not)(&y).map_err(|err| e(r, err))?;
            same_defined(r, &lhs, &(r.rwvr)(&x, &ny).map_err(|err| e(r, err))?)
        })
    }));

    let mut g = StreamGen::new(seed ^ 0x0A);
    report.push(identity(
        "X rwvr Y == reverse (X wvr Y)",
        cases,
        move || {
            let (x, y) = g.subject_condition();
            Box::new(move |r| {
                let lhs = (r.rwvr)(&x, &y).map_err(|err| e(r, err))?;
                let rhs = (r.wvr)(&x, &y).map_err(|err| e(r, err))?.reverse();
                same_defined(r, &lhs, &rhs)
            })
        },
    ));

    let mut g = StreamGen::new(seed ^ 0x0B);
    report.push(identity("X asa Y == first (X wvr Y)", cases, move || {
        let (x, y) = g.subject_condition();
        Box::new(move |r| {
            let res = (r.asa)(&x, &y).map_err(|err| e(r, err))?;
            let w = (r.wvr)(&x, &y).map_err(|err| e(r, err))?;
            constant_matches(r, &res, &w, x.defined_len())
        })
    }));

    let mut g = StreamGen::new(seed ^ 0x0C);
    report.push(identity("X ala Y == last (X wvr Y)", cases, move || {
        let (x, y) = g.subject_condition();
        Box::new(move |r| {
            let res = (r.ala)(&x, &y).map_err(|err| e(r, err))?;
            let w = (r.wvr)(&x, &y).map_err(|err| e(r, err))?.reverse();
            constant_matches(r, &res, &w, x.defined_len())
        })
    }));

    let mut g = StreamGen::new(seed ^ 0x0D);
    report.push(identity("X nasa Y == first (X nwvr Y)", cases, move || {
        let (x, y) = g.subject_condition();
        Box::new(move |r| {
            let res = (r.nasa)(&x, &y).map_err(|err| e(r, err))?;
            let w = (r.nwvr)(&x, &y).map_err(|err| e(r, err))?;
            constant_matches(r, &res, &w, x.defined_len())
        })
    }));

    let mut g = StreamGen::new(seed ^ 0x0E);
    report.push(identity("X nala Y == last (X nwvr Y)", cases, move || {
        let (x, y) = g.subject_condition();
        Box::new(move |r| {
            let res = (r.nala)(&x, &y).map_err(|err| e(r, err))?;
            let w = (r.nwvr)(&x, &y).map_err(|err| e(r, err))?.reverse();
            constant_matches(r, &res, &w, x.defined_len())
        })
    }));

    let mut g = StreamGen::new(seed ^ 0x0F);
    report.push(identity("X nupon Y == X upon (not Y)", cases, move || {
        let (x, y) = g.subject_condition();
        Box::new(move |r| {
            let lhs = (r.nupon)(&x, &y).map_err(|err| e(r, err))?;
            let ny = (r.not)(&y).map_err(|err| e(r, err))?;
            same_defined(r, &lhs, &(r.upon)(&x, &ny).map_err(|err| e(r, err))?)
        })
    }));

    let mut g = StreamGen::new(seed ^ 0x10);
    report.push(identity(
        "X rupon Y == reverse X upon reverse Y",
        cases,
        move || {
            let (x, y) = g.subject_condition();
            Box::new(move |r| {
                let lhs = (r.rupon)(&x, &y).map_err(|err| e(r, err))?;
                let rhs = (r.upon)(&x.reverse(), &y.reverse()).map_err(|err| e(r, err))?;
                same_defined(r, &lhs, &rhs)
            })
        },
    ));

    let mut g = StreamGen::new(seed ^ 0x11);
    report.push(identity(
        "X nrupon Y == reverse X nupon reverse Y",
        cases,
        move || {
            let (x, y) = g.subject_condition();
            Box::new(move |r| {
                let lhs = (r.nrupon)(&x, &y).map_err(|err| e(r, err))?;
                let rhs = (r.nupon)(&x.reverse(), &y.reverse()).map_err(|err| e(r, err))?;
                same_defined(r, &lhs, &rhs)
            })
        },
    ));

    report
}
