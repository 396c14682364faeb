//! Fox free derivatives `∂/∂xᵢ` on the integral group ring.
//!
//! The derivative of a word is a single left-to-right fold: with `p` the
//! prefix read so far, a letter `xᵢ` contributes `p` and a letter `xᵢ⁻¹`
//! contributes `-p·xᵢ⁻¹`. This is the Leibniz rule `∂(uv) = ∂u + u·∂v`
//! unrolled over the letters.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::freegroup::{push_reduced, Alphabet, FreeWord, Letter, WordError};
use crate::groupring::GroupRingElement;

fn check_index(alphabet: &Alphabet, i: usize) -> Result<(), WordError> {
    if i < alphabet.size() {
        Ok(())
    } else {
        Err(WordError::IndexOutOfRange {
            index: i,
            rank: alphabet.size(),
        })
    }
}

fn derive_into(
    out: &mut GroupRingElement,
    letters: impl IntoIterator<Item = Letter>,
    i: usize,
    coeff: &BigInt,
) {
    let mut prefix: Vec<Letter> = Vec::new();
    for l in letters {
        if l.generator == i && !l.inverse {
            out.add_term(prefix.clone(), coeff.clone());
        }
        push_reduced(&mut prefix, l);
        if l.generator == i && l.inverse {
            out.add_term(prefix.clone(), -coeff.clone());
        }
    }
}

/// `∂w/∂x_i` for a generator index `i`.
pub fn fox_derivative(w: &FreeWord, i: usize) -> Result<GroupRingElement, WordError> {
    check_index(w.alphabet(), i)?;
    let mut out = GroupRingElement::zero(w.alphabet());
    derive_into(&mut out, w.letters().iter().copied(), i, &BigInt::one());
    Ok(out)
}

/// Applies the Leibniz recursion to an unreduced letter sequence, reducing
/// only the running prefix. Cancelling letter pairs contribute cancelling
/// terms, so the result equals [`fox_derivative`] of the reduced word.
pub fn fox_derivative_unreduced(
    alphabet: &Arc<Alphabet>,
    letters: &[Letter],
    i: usize,
) -> Result<GroupRingElement, WordError> {
    check_index(alphabet, i)?;
    for l in letters {
        check_index(alphabet, l.generator)?;
    }
    let mut out = GroupRingElement::zero(alphabet);
    derive_into(&mut out, letters.iter().copied(), i, &BigInt::one());
    Ok(out)
}

/// Linear extension of [`fox_derivative`].
pub fn fox_derivative_ring(e: &GroupRingElement, i: usize) -> Result<GroupRingElement, WordError> {
    check_index(e.alphabet(), i)?;
    let mut out = GroupRingElement::zero(e.alphabet());
    for (letters, c) in e.raw_terms() {
        derive_into(&mut out, letters.iter().copied(), i, c);
    }
    Ok(out)
}

/// All partial derivatives of `w`, one per generator.
pub fn gradient(w: &FreeWord) -> Vec<GroupRingElement> {
    (0..w.alphabet().size())
        .map(|i| fox_derivative(w, i).expect("index in range"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::parse_word;
    use crate::groupring::parse_element;
    use proptest::prelude::*;

    fn w(s: &str) -> FreeWord {
        parse_word(s, &Alphabet::rank2()).unwrap()
    }
    fn e(s: &str) -> GroupRingElement {
        parse_element(s, &Alphabet::rank2()).unwrap()
    }
    const X: usize = 0;
    const Y: usize = 1;

    #[test]
    fn generators_give_kronecker_delta() {
        assert_eq!(fox_derivative(&w("x"), X).unwrap(), e("1"));
        assert_eq!(fox_derivative(&w("y"), X).unwrap(), e("0"));
        assert_eq!(fox_derivative(&w("1"), Y).unwrap(), e("0"));
    }

    #[test]
    fn inverse_generator() {
        assert_eq!(fox_derivative(&w("x^-1"), X).unwrap(), e("-x^-1"));
    }

    #[test]
    fn worked_examples() {
        assert_eq!(fox_derivative(&w("yxy"), Y).unwrap().to_string(), "1 + yx");
        assert_eq!(
            fox_derivative(&w("x^-1 y^-1 x"), X).unwrap().to_string(),
            "-x^-1 + x^-1 y^-1"
        );
    }

    #[test]
    fn ring_extension() {
        assert!(fox_derivative_ring(&e("0"), X).unwrap().is_zero());
        assert_eq!(fox_derivative_ring(&e("1 + yx"), Y).unwrap(), e("1"));
        assert_eq!(fox_derivative_ring(&e("2*x"), X).unwrap(), e("2"));
    }

    #[test]
    fn index_out_of_range() {
        assert_eq!(
            fox_derivative(&w("x"), 2).unwrap_err(),
            WordError::IndexOutOfRange { index: 2, rank: 2 }
        );
        assert!(fox_derivative_ring(&e("x"), 5).is_err());
    }

    fn raw(rank: usize, max: usize) -> impl Strategy<Value = Vec<Letter>> {
        prop::collection::vec(
            (0..rank, prop::bool::ANY).prop_map(|(g, i)| Letter::new(g, i)),
            0..=max,
        )
    }

    proptest! {
        #[test]
        fn leibniz_rule(a in raw(3, 20), b in raw(3, 20), i in 0usize..3) {
            let xyz = Alphabet::rank3();
            let a = FreeWord::from_letters(&xyz, a).unwrap();
            let b = FreeWord::from_letters(&xyz, b).unwrap();
            let ab = a.multiply(&b).unwrap();
            let lhs = fox_derivative(&ab, i).unwrap();
            let rhs = &fox_derivative(&a, i).unwrap()
                + &(&GroupRingElement::embed(&a) * &fox_derivative(&b, i).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn spelling_independent(s in raw(3, 30), i in 0usize..3) {
            let xyz = Alphabet::rank3();
            let reduced = FreeWord::from_letters(&xyz, s.clone()).unwrap();
            prop_assert_eq!(
                fox_derivative_unreduced(&xyz, &s, i).unwrap(),
                fox_derivative(&reduced, i).unwrap()
            );
        }
    }
}
