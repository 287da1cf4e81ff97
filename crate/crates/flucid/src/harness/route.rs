//! The two operator routes behind one signature.
//!
//! Every property is stated once and checked against both routes; the
//! indexed entries wrap their kernels into the pipelined shape. `second`
//! and `prelast` have no indexed kernel of their own and are realized by
//! their defining compositions.

use crate::ops::indexed as ix;
use crate::ops::indexed::IndexedStream;
use crate::ops::pipelined as pl;
use crate::ops::OpError;
use crate::stream::BoundedStream;

pub type Unary = fn(&BoundedStream) -> Result<BoundedStream, OpError>;
pub type Binary = fn(&BoundedStream, &BoundedStream) -> Result<BoundedStream, OpError>;

#[derive(Clone, Copy)]
pub struct Route {
    pub name: &'static str,
    pub first: Unary,
    pub second: Unary,
    pub last: Unary,
    pub prelast: Unary,
    pub next: Unary,
    pub prev: Unary,
    pub neg: Unary,
    pub not: Unary,
    pub fby: Binary,
    pub pby: Binary,
    pub wvr: Binary,
    pub rwvr: Binary,
    pub nwvr: Binary,
    pub nrwvr: Binary,
    pub asa: Binary,
    pub nasa: Binary,
    pub ala: Binary,
    pub nala: Binary,
    pub upon: Binary,
    pub rupon: Binary,
    pub nupon: Binary,
    pub nrupon: Binary,
    pub and: Binary,
    pub or: Binary,
    pub xor: Binary,
}

pub fn pipelined_route() -> Route {
    Route {
        name: "pipelined",
        first: |x| Ok(pl::p_first(x)),
        second: |x| Ok(pl::p_second(x)),
        last: |x| Ok(pl::p_last(x)),
        prelast: |x| Ok(pl::p_prelast(x)),
        next: |x| Ok(pl::p_next(x)),
        prev: |x| Ok(pl::p_prev(x)),
        neg: pl::p_neg,
        not: pl::p_not,
        fby: |x, y| Ok(pl::p_fby(x, y)),
        pby: |x, y| Ok(pl::p_pby(x, y)),
        wvr: pl::p_wvr,
        rwvr: pl::p_rwvr,
        nwvr: pl::p_nwvr,
        nrwvr: pl::p_nrwvr,
        asa: pl::p_asa,
        nasa: pl::p_nasa,
        ala: pl::p_ala,
        nala: pl::p_nala,
        upon: pl::p_upon,
        rupon: pl::p_rupon,
        nupon: pl::p_nupon,
        nrupon: pl::p_nrupon,
        and: pl::p_and,
        or: pl::p_or,
        xor: pl::p_xor,
    }
}

fn ind(x: &BoundedStream) -> IndexedStream {
    IndexedStream::new(x.clone())
}

macro_rules! wrap1 {
    ($f:path) => {
        |x| Ok($f(&ind(x)).into_stream())
    };
}

macro_rules! wrap1_f {
    ($f:path) => {
        |x| $f(&ind(x)).map(IndexedStream::into_stream)
    };
}

macro_rules! wrap2 {
    ($f:path) => {
        |x, y| Ok($f(&ind(x), &ind(y)).into_stream())
    };
}

macro_rules! wrap2_f {
    ($f:path) => {
        |x, y| $f(&ind(x), &ind(y)).map(IndexedStream::into_stream)
    };
}

pub fn indexed_route() -> Route {
    Route {
        name: "indexed",
        first: wrap1!(ix::i_first),
        second: |x| Ok(ix::i_first(&ix::i_next(&ind(x))).into_stream()),
        last: wrap1!(ix::i_last),
        prelast: |x| Ok(ix::i_last(&ix::i_prev(&ind(x))).into_stream()),
        next: wrap1!(ix::i_next),
        prev: wrap1!(ix::i_prev),
        neg: wrap1_f!(ix::i_neg),
        not: wrap1_f!(ix::i_not),
        fby: wrap2!(ix::i_fby),
        pby: wrap2!(ix::i_pby),
        wvr: wrap2_f!(ix::i_wvr),
        rwvr: wrap2_f!(ix::i_rwvr),
        nwvr: wrap2_f!(ix::i_nwvr),
        nrwvr: wrap2_f!(ix::i_nrwvr),
        asa: wrap2_f!(ix::i_asa),
        nasa: wrap2_f!(ix::i_nasa),
        ala: wrap2_f!(ix::i_ala),
        nala: wrap2_f!(ix::i_nala),
        upon: wrap2_f!(ix::i_upon),
        rupon: wrap2_f!(ix::i_rupon),
        nupon: wrap2_f!(ix::i_nupon),
        nrupon: wrap2_f!(ix::i_nrupon),
        and: wrap2_f!(ix::i_and),
        or: wrap2_f!(ix::i_or),
        xor: wrap2_f!(ix::i_xor),
    }
}

pub fn routes() -> [Route; 2] {
    [pipelined_route(), indexed_route()]
}
