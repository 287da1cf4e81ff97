//! Event reconstruction combinators over observation sequences.
//!
//! An observation sequence is a `Seq` of runs; each run is a `Seq` of
//! events. `combine` extends every run with one more observation,
//! `product` concatenates every run of one sequence with every run of
//! another. Together they enumerate the explanations a piece of evidence
//! admits.

use crate::ops::OpError;
use crate::value::Value;

fn as_runs(v: &Value, what: &str) -> Result<Vec<Vec<Value>>, OpError> {
    let Value::Seq(runs) = v else {
        return Err(OpError(format!(
            "{what} expects an observation sequence, got {}",
            v.kind_name()
        )));
    };
    runs.iter()
        .map(|r| match r {
            Value::Seq(events) => Ok(events.clone()),
            other => Err(OpError(format!(
                "{what} expects runs, got {}",
                other.kind_name()
            ))),
        })
        .collect()
}

fn append(mut run: Vec<Value>, event: &Value) -> Vec<Value> {
    match event {
        Value::Seq(events) => run.extend(events.iter().cloned()),
        other => run.push(other.clone()),
    }
    run
}

/// Every run of `s`, each extended with observation `e`. A `Seq` event
/// contributes its elements in order; any other value is appended as one
/// event.
pub fn combine(s: &Value, e: &Value) -> Result<Value, OpError> {
    let runs = as_runs(s, "combine")?;
    Ok(Value::Seq(
        runs.into_iter().map(|r| Value::Seq(append(r, e))).collect(),
    ))
}

/// All concatenations of a run from `s1` with a run from `s2`; the second
/// operand varies fastest.
pub fn product(s1: &Value, s2: &Value) -> Result<Value, OpError> {
    let a = as_runs(s1, "product")?;
    let b = as_runs(s2, "product")?;
    let mut out = Vec::with_capacity(a.len() * b.len());
    for ra in &a {
        for rb in &b {
            let mut run = ra.clone();
            run.extend(rb.iter().cloned());
            out.push(Value::Seq(run));
        }
    }
    Ok(Value::Seq(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(events: &[i64]) -> Value {
        Value::Seq(events.iter().map(|&v| Value::Int(v)).collect())
    }

    fn runs(rs: &[&[i64]]) -> Value {
        Value::Seq(rs.iter().map(|r| run(r)).collect())
    }

    #[test]
    fn combine_extends_every_run() {
        let s = runs(&[&[1, 2], &[3]]);
        assert_eq!(
            combine(&s, &Value::Int(9)).unwrap(),
            runs(&[&[1, 2, 9], &[3, 9]])
        );
        assert_eq!(
            combine(&s, &run(&[7, 8])).unwrap(),
            runs(&[&[1, 2, 7, 8], &[3, 7, 8]])
        );
        assert_eq!(combine(&runs(&[]), &Value::Int(1)).unwrap(), runs(&[]));
    }

    #[test]
    fn product_is_second_major() {
        let a = runs(&[&[1], &[2]]);
        let b = runs(&[&[10], &[20]]);
        assert_eq!(
            product(&a, &b).unwrap(),
            runs(&[&[1, 10], &[1, 20], &[2, 10], &[2, 20]])
        );
        assert_eq!(product(&a, &runs(&[])).unwrap(), runs(&[]));
        assert_eq!(product(&runs(&[]), &b).unwrap(), runs(&[]));
    }

    #[test]
    fn product_counts_and_contents_match_enumeration() {
        // all shapes with up to 3 runs of up to 3 events
        let shapes: Vec<Vec<Vec<i64>>> = vec![
            vec![],
            vec![vec![]],
            vec![vec![1]],
            vec![vec![1, 2], vec![3]],
            vec![vec![1], vec![2], vec![3, 4, 5]],
        ];
        for a in &shapes {
            for b in &shapes {
                let va = Value::Seq(a.iter().map(|r| run(r)).collect());
                let vb = Value::Seq(b.iter().map(|r| run(r)).collect());
                let got = product(&va, &vb).unwrap();
                let Value::Seq(got_runs) = &got else { panic!() };
                assert_eq!(got_runs.len(), a.len() * b.len());
                let mut k = 0;
                for ra in a {
                    for rb in b {
                        let mut want = ra.clone();
                        want.extend(rb);
                        assert_eq!(got_runs[k], run(&want));
                        k += 1;
                    }
                }
            }
        }
    }

    #[test]
    fn non_sequences_are_rejected() {
        assert!(combine(&Value::Int(1), &Value::Int(2)).is_err());
        assert!(combine(&Value::Seq(vec![Value::Int(1)]), &Value::Int(2)).is_err());
        assert!(product(&runs(&[&[1]]), &Value::Bool(true)).is_err());
    }
}
