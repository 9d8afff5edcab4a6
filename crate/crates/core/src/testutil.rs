use proptest::prelude::*;

use crate::monomial::{ExponentVector, MonomialIdeal};
use crate::scale::ScaleFactor;

pub(crate) fn arb_ideal_in(n: usize, max_exp: u64, max_gens: usize) -> impl Strategy<Value = MonomialIdeal> {
    prop::collection::vec(prop::collection::vec(0..=max_exp, n), 1..=max_gens).prop_map(move |gs| {
        MonomialIdeal::from_generators(n, gs.into_iter().map(|g| ExponentVector::new(g).unwrap())).unwrap()
    })
}

pub(crate) fn arb_ideal(max_vars: usize, max_exp: u64, max_gens: usize) -> impl Strategy<Value = MonomialIdeal> {
    (1..=max_vars).prop_flat_map(move |n| arb_ideal_in(n, max_exp, max_gens))
}

/// `k` ideals in a common number of variables.
pub(crate) fn arb_ideals(k: usize, max_vars: usize, max_exp: u64, max_gens: usize) -> impl Strategy<Value = Vec<MonomialIdeal>> {
    (1..=max_vars).prop_flat_map(move |n| prop::collection::vec(arb_ideal_in(n, max_exp, max_gens), k))
}


/// Ideals containing a pure power of every variable.
pub(crate) fn arb_m_primary(max_vars: usize, max_exp: u64, max_gens: usize) -> impl Strategy<Value = MonomialIdeal> {
    (1..=max_vars).prop_flat_map(move |n| {
        (prop::collection::vec(1..=max_exp, n), arb_ideal_in(n, max_exp, max_gens)).prop_map(move |(pure, i)| {
            let powers = pure.iter().enumerate().map(|(k, &a)| ExponentVector::pure_power(n, k, a));
            MonomialIdeal::from_generators(n, powers.chain(i.generators().iter().cloned())).unwrap()
        })
    })
}

pub(crate) fn arb_scale(max_num: i64, max_den: i64) -> impl Strategy<Value = ScaleFactor> {
    (0..=max_num, 1..=max_den).prop_map(|(a, b)| ScaleFactor::new(a, b).unwrap())
}

/// Rationals in `[1, 1 + max_num / max_den]`.
pub(crate) fn arb_s(max_num: i64, max_den: i64) -> impl Strategy<Value = ScaleFactor> {
    (0..=max_num, 1..=max_den).prop_map(|(a, b)| ScaleFactor::new(a + b, b).unwrap())
}
