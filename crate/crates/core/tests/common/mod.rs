#![allow(dead_code)]

use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::Rng;
use workbench_core::cyclo::{CycElem, CycField};
use workbench_core::mqfield::{MQElem, PrimeBasis};
use workbench_core::ordgroup::GroupElem;
use workbench_core::qaffine::{QAlgebra, QPoly};
use workbench_core::rational::Q;
use workbench_core::twistring::TwistedElem;

pub fn small_q<R: Rng>(rng: &mut R) -> Q {
    Q::new(
        BigInt::from(rng.gen_range(-9i64..=9)),
        BigInt::from(rng.gen_range(1i64..=5)),
    )
}

/// Random element with up to `terms` components over a basis of `n` primes.
pub fn random_mq<R: Rng>(rng: &mut R, basis: &Arc<PrimeBasis>, terms: usize) -> MQElem {
    let n = basis.len();
    let k = rng.gen_range(0..=terms);
    let parts = (0..k).map(|_| {
        let idx: Vec<usize> = (1..=n).filter(|_| rng.gen_bool(0.4)).collect();
        (idx, small_q(rng))
    });
    let parts: Vec<_> = parts.collect();
    MQElem::from_components(basis, parts).unwrap()
}

pub fn random_nonzero_mq<R: Rng>(rng: &mut R, basis: &Arc<PrimeBasis>, terms: usize) -> MQElem {
    loop {
        let a = random_mq(rng, basis, terms);
        if !a.is_zero() {
            return a;
        }
    }
}

pub fn random_rational_mq<R: Rng>(rng: &mut R, basis: &Arc<PrimeBasis>) -> MQElem {
    MQElem::rational(basis, small_q(rng))
}

/// Random group element with indices `1..=max_index` and exponents in `-3..=3`.
pub fn random_group<R: Rng>(rng: &mut R, max_index: usize) -> GroupElem {
    GroupElem::from_pairs((1..=max_index).map(|i| (i, rng.gen_range(-3i64..=3))))
}

/// Random element biased so that central elements show up regularly.
pub fn random_twisted<R: Rng>(
    rng: &mut R,
    basis: &Arc<PrimeBasis>,
    max_index: usize,
    max_support: usize,
) -> TwistedElem {
    let k = rng.gen_range(0..=max_support);
    let central_bias = rng.gen_bool(0.5);
    let terms: Vec<(GroupElem, MQElem)> = (0..k)
        .map(|_| {
            let mut x = random_group(rng, max_index);
            let mut a = random_mq(rng, basis, 2);
            if central_bias && rng.gen_bool(0.8) {
                x = GroupElem::from_pairs(x.support().map(|(i, e)| (i, 2 * e)));
                a = MQElem::rational(basis, a.rational_part());
            }
            (x, a)
        })
        .collect();
    TwistedElem::from_terms(basis, terms).unwrap()
}

pub fn random_cyc<R: Rng>(rng: &mut R, field: &Arc<CycField>) -> CycElem {
    let coeffs = (0..field.degree())
        .map(|_| if rng.gen_bool(0.5) { small_q(rng) } else { Q::from_integer(0.into()) })
        .collect();
    CycElem::from_coeffs(field, coeffs)
}

pub fn random_qpoly<R: Rng>(rng: &mut R, alg: &Arc<QAlgebra>, terms: usize, max_exp: u32) -> QPoly {
    let mut out = QPoly::zero(alg);
    for _ in 0..rng.gen_range(0..=terms) {
        let exps = (0..alg.n()).map(|_| rng.gen_range(0..=max_exp)).collect();
        let m = QPoly::monomial(alg, exps, random_cyc(rng, alg.field()));
        out = out.add(&m).unwrap();
    }
    out
}

pub fn arb_q() -> impl Strategy<Value = Q> {
    (-20i64..=20, 1i64..=7).prop_map(|(a, b)| Q::new(BigInt::from(a), BigInt::from(b)))
}

/// Components as `(radical bitmask, coefficient)` over `n` primes.
pub fn arb_mq(basis: Arc<PrimeBasis>) -> impl Strategy<Value = MQElem> {
    let n = basis.len();
    prop::collection::vec((0u64..(1 << n), arb_q()), 0..5).prop_map(move |parts| {
        let parts = parts.into_iter().map(|(mask, c)| {
            let idx: Vec<usize> = (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect();
            (idx, c)
        });
        MQElem::from_components(&basis, parts.collect::<Vec<_>>()).unwrap()
    })
}

pub fn arb_group(max_index: usize) -> impl Strategy<Value = GroupElem> {
    prop::collection::vec(-4i64..=4, max_index).prop_map(|v| GroupElem::from_coords(&v))
}

pub fn arb_twisted(basis: Arc<PrimeBasis>, max_index: usize) -> impl Strategy<Value = TwistedElem> {
    let b = basis.clone();
    prop::collection::vec((arb_group(max_index), arb_mq(basis)), 0..4)
        .prop_map(move |terms| TwistedElem::from_terms(&b, terms).unwrap())
}
