//! Index machines restated through rank.
//!
//! `wvr` runs on two auxiliary index streams (U the qualifying-index
//! carry, T the selection chain); `upon` runs on an advance counter W.
//! Each lemma recomputes the machine from rank queries alone and checks
//! the fixpoint construction against it, then checks the selection the
//! machines are for.

use crate::harness::gen::StreamGen;
use crate::harness::rank::Ranks;
use crate::harness::report::{property, Report};
use crate::harness::route::routes;
use crate::ops::indexed::{i_upon_internals, i_wvr_internals, IndexedStream};
use crate::value::Value;

fn truths(y: &crate::stream::BoundedStream) -> Vec<bool> {
    y.iter()
        .map(|v| v.truthy().expect("generated conditions are truth-valued"))
        .collect()
}

pub fn check_lemmas(seed: u64, cases: usize) -> Report {
    let mut report = Report::new(format!("lemmas: seed {seed}, {cases} cases each"));

    let mut g = StreamGen::new(seed ^ 0x60);
    report.push(property(
        "U[i] is the first qualifying index at or after i",
        cases,
        move |_| {
            let (x, y) = g.subject_condition();
            let ranks = Ranks::new(&truths(&y));
            let (_, m) = i_wvr_internals(&IndexedStream::new(x), &IndexedStream::new(y))
                .map_err(|e| e.to_string())?;
            for (i, u) in m.u.iter().enumerate() {
                let want = ranks.seek(i).map(|j| j as i64);
                if *u != want {
                    return Err(format!("U[{i}] = {u:?}, rank says {want:?}"));
                }
            }
            Ok(())
        },
    ));

    let mut g = StreamGen::new(seed ^ 0x61);
    report.push(property(
        "T[k] is the (k+1)-th qualifying index",
        cases,
        move |_| {
            let (x, y) = g.subject_condition();
            let ranks = Ranks::new(&truths(&y));
            let (_, m) = i_wvr_internals(&IndexedStream::new(x), &IndexedStream::new(y))
                .map_err(|e| e.to_string())?;
            if m.t.len() != ranks.total() {
                return Err(format!(
                    "|T| = {}, but {} elements qualify",
                    m.t.len(),
                    ranks.total()
                ));
            }
            for (k, t) in m.t.iter().enumerate() {
                let want = ranks.select(k).map(|j| j as i64);
                if Some(*t) != want {
                    return Err(format!("T[{k}] = {t}, rank says {want:?}"));
                }
            }
            Ok(())
        },
    ));

    let mut g = StreamGen::new(seed ^ 0x62);
    report.push(property(
        "W[i] counts the qualifying steps before i",
        cases,
        move |_| {
            let (x, y) = g.subject_condition();
            let ranks = Ranks::new(&truths(&y));
            let n = y.defined_len();
            let (_, m) = i_upon_internals(&IndexedStream::new(x), &IndexedStream::new(y))
                .map_err(|e| e.to_string())?;
            if m.w.len() != n + 1 {
                return Err(format!("|W| = {}, want {}", m.w.len(), n + 1));
            }
            for (i, w) in m.w.iter().enumerate() {
                let want = ranks.before(i) as i64;
                if *w != want {
                    return Err(format!("W[{i}] = {w}, rank says {want}"));
                }
            }
            Ok(())
        },
    ));

    let mut g = StreamGen::new(seed ^ 0x63);
    report.push(property(
        "(X wvr Y)[k] == X[T[k]] on both routes",
        cases,
        move |_| {
            let (x, y) = g.subject_condition();
            let ranks = Ranks::new(&truths(&y));
            for route in routes() {
                let res = (route.wvr)(&x, &y).map_err(|e| format!("[{}] {e}", route.name))?;
                if res.defined_len() != ranks.total() {
                    return Err(format!(
                        "[{}] {} selected, {} qualify",
                        route.name,
                        res.defined_len(),
                        ranks.total()
                    ));
                }
                for (k, v) in res.iter().enumerate() {
                    let j = ranks.select(k).expect("k < total");
                    let want: &Value = &x.defined_values()[j];
                    if v != want {
                        return Err(format!("[{}] element {k}: {v} != {want}", route.name));
                    }
                }
            }
            Ok(())
        },
    ));

    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemmas_hold() {
        let r = check_lemmas(42, 60);
        assert!(r.passed(), "{r}");
        assert_eq!(r.properties.len(), 4);
    }
}
