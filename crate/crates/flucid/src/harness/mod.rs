//! Verification harness: every operator implemented twice, checked for
//! agreement and against the algebra, the index-machine lemmas, and the
//! golden reference rows.

pub mod axioms;
pub mod gen;
pub mod lemmas;
pub mod propositions;
pub mod rank;
pub mod report;
pub mod route;
pub mod table1;

pub use report::{property, PropertyReport, Report};

/// Runs every suite; the golden rows take no seed.
pub fn check_all(seed: u64, cases: usize) -> Vec<Report> {
    vec![
        table1::check_table1(),
        axioms::check_axioms(seed, cases),
        propositions::check_propositions(seed, cases),
        lemmas::check_lemmas(seed, cases),
    ]
}
