//! Seeded random elements for the verification campaigns.

use std::sync::Arc;

use num_bigint::BigInt;
use rand::Rng;
use workbench_core::cyclo::{CycElem, CycField};
use workbench_core::mqfield::{MQElem, PrimeBasis};
use workbench_core::ordgroup::GroupElem;
use workbench_core::rational::Q;
use workbench_core::twistring::TwistedElem;

pub fn rational<R: Rng>(rng: &mut R) -> Q {
    Q::new(
        BigInt::from(rng.gen_range(-9i64..=9)),
        BigInt::from(rng.gen_range(1i64..=5)),
    )
}

/// Up to `terms` components with random radical subsets of `1..=basis.len()`.
pub fn field_elem<R: Rng>(rng: &mut R, basis: &Arc<PrimeBasis>, terms: usize) -> MQElem {
    let n = basis.len();
    let parts: Vec<(Vec<usize>, Q)> = (0..rng.gen_range(0..=terms))
        .map(|_| {
            let idx = (1..=n).filter(|_| rng.gen_bool(0.4)).collect();
            (idx, rational(rng))
        })
        .collect();
    MQElem::from_components(basis, parts).expect("indices within the basis")
}

pub fn group_elem<R: Rng>(rng: &mut R, max_index: usize) -> GroupElem {
    GroupElem::from_pairs((1..=max_index).map(|i| (i, rng.gen_range(-3i64..=3))))
}

/// Up to `max_support` terms; about half the draws favour squares with rational
/// coefficients so that central elements are well represented.
pub fn twisted_elem<R: Rng>(
    rng: &mut R,
    basis: &Arc<PrimeBasis>,
    max_index: usize,
    max_support: usize,
) -> TwistedElem {
    let central_bias = rng.gen_bool(0.5);
    let terms: Vec<(GroupElem, MQElem)> = (0..rng.gen_range(0..=max_support))
        .map(|_| {
            let x = group_elem(rng, max_index);
            let a = field_elem(rng, basis, 2);
            if central_bias && rng.gen_bool(0.8) {
                let sq = GroupElem::from_pairs(x.support().map(|(i, e)| (i, 2 * e)));
                (sq, MQElem::rational(basis, a.rational_part()))
            } else {
                (x, a)
            }
        })
        .collect();
    TwistedElem::from_terms(basis, terms).expect("indices within the basis")
}

pub fn cyc_elem<R: Rng>(rng: &mut R, field: &Arc<CycField>) -> CycElem {
    let coeffs = (0..field.degree())
        .map(|_| {
            if rng.gen_bool(0.5) {
                rational(rng)
            } else {
                Q::from_integer(0.into())
            }
        })
        .collect();
    CycElem::from_coeffs(field, coeffs)
}
