#![allow(dead_code)]

use std::sync::Arc;

use proptest::prelude::*;
use ybe_fox::freegroup::{Alphabet, FreeWord, Letter};
use ybe_fox::groupring::GroupRingElement;

pub fn alphabet(rank: usize) -> Arc<Alphabet> {
    match rank {
        2 => Alphabet::rank2(),
        3 => Alphabet::rank3(),
        _ => Alphabet::new((0..rank).map(|i| format!("g{i}"))).unwrap(),
    }
}

pub fn raw_letters(rank: usize, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(
        (0..rank, any::<bool>()).prop_map(|(g, i)| Letter::new(g, i)),
        0..=max_len,
    )
}

pub fn word(rank: usize, max_len: usize) -> impl Strategy<Value = FreeWord> {
    let a = alphabet(rank);
    raw_letters(rank, max_len).prop_map(move |l| FreeWord::from_letters(&a, l).unwrap())
}

pub fn element(
    rank: usize,
    max_terms: usize,
    max_len: usize,
) -> impl Strategy<Value = GroupRingElement> {
    let a = alphabet(rank);
    prop::collection::vec((-4i64..=4, word(rank, max_len)), 0..=max_terms)
        .prop_map(move |terms| GroupRingElement::from_terms(&a, terms).unwrap())
}
