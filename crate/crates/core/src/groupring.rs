//! The integral group ring of a free group.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::freegroup::{
    check_alphabets, format_letters, parse_word, push_reduced, shortlex, Alphabet, FreeWord,
    Letter, ParseError, ParseErrorKind, WordError,
};

/// Reduced letter sequence ordered shortlex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct WordKey(pub(crate) Vec<Letter>);

impl Ord for WordKey {
    fn cmp(&self, other: &Self) -> Ordering {
        shortlex(&self.0, &other.0)
    }
}

impl PartialOrd for WordKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite `ℤ`-linear combination of reduced words.
///
/// Terms are kept in shortlex order of their words and no stored coefficient
/// is zero, so structural equality is equality in the ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupRingElement {
    alphabet: Arc<Alphabet>,
    terms: BTreeMap<WordKey, BigInt>,
}

impl GroupRingElement {
    pub fn zero(alphabet: &Arc<Alphabet>) -> Self {
        GroupRingElement {
            alphabet: alphabet.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alphabet: &Arc<Alphabet>) -> Self {
        Self::embed(&FreeWord::identity(alphabet))
    }

    pub fn embed(w: &FreeWord) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(WordKey(w.letters().to_vec()), BigInt::one());
        GroupRingElement {
            alphabet: w.alphabet().clone(),
            terms,
        }
    }

    /// Builds an element from `(coefficient, word)` pairs, collecting like terms.
    pub fn from_terms<I, C>(alphabet: &Arc<Alphabet>, terms: I) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = (C, FreeWord)>,
        C: Into<BigInt>,
    {
        let mut out = Self::zero(alphabet);
        for (c, w) in terms {
            check_alphabets(alphabet, w.alphabet())?;
            out.add_term(w.letters().to_vec(), c.into());
        }
        Ok(out)
    }

    pub(crate) fn add_term(&mut self, letters: Vec<Letter>, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(WordKey(letters)) {
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (shortlex) order.
    pub fn terms(&self) -> impl Iterator<Item = (FreeWord, &BigInt)> + '_ {
        self.terms.iter().map(|(k, c)| {
            (
                FreeWord::from_reduced(self.alphabet.clone(), k.0.clone()),
                c,
            )
        })
    }

    pub(crate) fn raw_terms(&self) -> impl Iterator<Item = (&[Letter], &BigInt)> + '_ {
        self.terms.iter().map(|(k, c)| (k.0.as_slice(), c))
    }

    pub fn coefficient(&self, w: &FreeWord) -> BigInt {
        self.terms
            .get(&WordKey(w.letters().to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn scale(&self, k: impl Into<BigInt>) -> Self {
        let k = k.into();
        if k.is_zero() {
            return Self::zero(&self.alphabet);
        }
        GroupRingElement {
            alphabet: self.alphabet.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c * &k))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, WordError> {
        check_alphabets(&self.alphabet, &other.alphabet)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.0.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, WordError> {
        self.add(&other.scale(-1))
    }

    /// Convolution product; `self` on the left.
    pub fn ring_multiply(&self, other: &Self) -> Result<Self, WordError> {
        check_alphabets(&self.alphabet, &other.alphabet)?;
        let mut out = Self::zero(&self.alphabet);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut letters = w1.0.clone();
                for &l in &w2.0 {
                    push_reduced(&mut letters, l);
                }
                out.add_term(letters, c1 * c2);
            }
        }
        Ok(out)
    }

    /// Extends the word homomorphism `generator k ↦ images[k]` linearly.
    pub fn substitute_ring(&self, images: &[FreeWord]) -> Result<Self, WordError> {
        if images.len() != self.alphabet.size() {
            return Err(WordError::ImageCountMismatch {
                expected: self.alphabet.size(),
                found: images.len(),
            });
        }
        let target = images[0].alphabet().clone();
        let mut out = Self::zero(&target);
        for (w, c) in self.terms() {
            let image = w.substitute(images)?;
            out.add_term(image.letters().to_vec(), c.clone());
        }
        Ok(out)
    }

    /// Sum of coefficients.
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn parse(text: &str, alphabet: &Arc<Alphabet>) -> Result<Self, ParseError> {
        parse_element(text, alphabet)
    }
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupRingElement({})", self)
    }
}

/// Canonical text, e.g. `-x^-1 + x^-1 y^-1` or `1 + 3*yx`.
impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let magnitude = c.abs();
            if w.0.is_empty() {
                write!(f, "{}", magnitude)?;
            } else {
                if !magnitude.is_one() {
                    write!(f, "{}*", magnitude)?;
                }
                f.write_str(&format_letters(&self.alphabet, &w.0))?;
            }
        }
        Ok(())
    }
}

/// Parses the canonical element text. Accepts any term order and repeated
/// words; like terms are collected.
pub fn parse_element(text: &str, alphabet: &Arc<Alphabet>) -> Result<GroupRingElement, ParseError> {
    let mut out = GroupRingElement::zero(alphabet);
    if text.trim() == "0" {
        return Ok(out);
    }
    // Split at '+' / '-' signs that are not exponent signs.
    let bytes = text.as_bytes();
    let mut pieces: Vec<(usize, bool, usize)> = Vec::new(); // (start, negative, end)
    let mut start = 0;
    let mut negative = false;
    let mut last_nonspace: Option<u8> = None;
    for (i, &b) in bytes.iter().enumerate() {
        if (b == b'+' || b == b'-') && last_nonspace != Some(b'^') {
            if last_nonspace.is_none() && pieces.is_empty() && start == 0 {
                // leading sign of the first term
            } else {
                pieces.push((start, negative, i));
            }
            start = i + 1;
            negative = b == b'-';
            last_nonspace = None;
            continue;
        }
        if b != b' ' {
            last_nonspace = Some(b);
        }
    }
    pieces.push((start, negative, bytes.len()));

    for (start, negative, end) in pieces {
        let piece = &text[start..end];
        let lead = piece.len() - piece.trim_start().len();
        let body = piece.trim();
        let offset = start + lead;
        if body.is_empty() {
            return Err(ParseError::new(offset, ParseErrorKind::ExpectedTerm));
        }
        let digits = body.bytes().take_while(u8::is_ascii_digit).count();
        let (coeff, word_text, word_offset) = if digits == body.len() {
            (body.parse::<BigInt>().unwrap(), "", offset + digits)
        } else if digits > 0 && body.as_bytes()[digits] == b'*' {
            (
                body[..digits].parse::<BigInt>().unwrap(),
                &body[digits + 1..],
                offset + digits + 1,
            )
        } else {
            (BigInt::one(), body, offset)
        };
        if digits > 0 && digits < body.len() && word_text.trim().is_empty() {
            return Err(ParseError::new(
                word_offset,
                ParseErrorKind::ExpectedGenerator,
            ));
        }
        let word = parse_word(word_text, alphabet).map_err(|e| ParseError {
            offset: e.offset + word_offset,
            kind: e.kind,
        })?;
        let coeff = if negative { -coeff } else { coeff };
        out.add_term(word.letters().to_vec(), coeff);
    }
    Ok(out)
}

fn expect_same(r: Result<GroupRingElement, WordError>) -> GroupRingElement {
    r.unwrap_or_else(|e| panic!("group ring operation: {e}"))
}

/// Panics on alphabet mismatch; use [`GroupRingElement::add`] for a checked sum.
impl Add for &GroupRingElement {
    type Output = GroupRingElement;
    fn add(self, rhs: &GroupRingElement) -> GroupRingElement {
        expect_same(GroupRingElement::add(self, rhs))
    }
}

/// Panics on alphabet mismatch.
impl Sub for &GroupRingElement {
    type Output = GroupRingElement;
    fn sub(self, rhs: &GroupRingElement) -> GroupRingElement {
        expect_same(GroupRingElement::sub(self, rhs))
    }
}

/// Panics on alphabet mismatch; use [`GroupRingElement::ring_multiply`] for a
/// checked product.
impl Mul for &GroupRingElement {
    type Output = GroupRingElement;
    fn mul(self, rhs: &GroupRingElement) -> GroupRingElement {
        expect_same(self.ring_multiply(rhs))
    }
}

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;
    fn neg(self) -> GroupRingElement {
        self.scale(-1)
    }
}

impl From<&FreeWord> for GroupRingElement {
    fn from(w: &FreeWord) -> Self {
        GroupRingElement::embed(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(text: &str) -> GroupRingElement {
        parse_element(text, &Alphabet::rank2()).unwrap()
    }

    fn w(text: &str) -> FreeWord {
        parse_word(text, &Alphabet::rank2()).unwrap()
    }

    #[test]
    fn add_examples() {
        assert!(e("y").add(&e("-y")).unwrap().is_zero());
        assert_eq!(e("1").add(&e("yx")).unwrap().to_string(), "1 + yx");
        assert_eq!(
            e("-x^-1").add(&e("x^-1 y^-1")).unwrap().to_string(),
            "-x^-1 + x^-1 y^-1"
        );
        let xyz = GroupRingElement::one(&Alphabet::rank3());
        assert!(matches!(
            e("1").add(&xyz),
            Err(WordError::AlphabetMismatch { .. })
        ));
    }

    #[test]
    fn multiply_examples() {
        let a = e("x + 3*y^-1 - yx");
        assert_eq!(&GroupRingElement::one(a.alphabet()) * &a, a);
        assert_eq!(&a * &GroupRingElement::one(a.alphabet()), a);
        assert_eq!((&e("y") * &e("1 + yx")).to_string(), "y + y^2 x");
        assert_eq!((&e("x - 1") * &e("x^-1")).to_string(), "1 - x^-1");
        // noncommutative
        assert_ne!(&e("x") * &e("y"), &e("y") * &e("x"));
    }

    #[test]
    fn embed_and_scale() {
        let a = Alphabet::rank2();
        assert_eq!(
            GroupRingElement::embed(&FreeWord::identity(&a)),
            GroupRingElement::one(&a)
        );
        assert_eq!(
            GroupRingElement::embed(&w("y^-1")).scale(-1).to_string(),
            "-y^-1"
        );
        let y = GroupRingElement::embed(&w("y"));
        assert!((&y.scale(2) + &y.scale(-2)).is_zero());
        assert!(y.scale(0).is_zero());
        let p = GroupRingElement::embed(&w("x").multiply(&w("y")).unwrap());
        assert_eq!(
            p,
            &GroupRingElement::embed(&w("x")) * &GroupRingElement::embed(&w("y"))
        );
    }

    #[test]
    fn substitute_ring_examples() {
        let xyz = Alphabet::rank3();
        let p = |s: &str| parse_word(s, &xyz).unwrap();
        let v_xy = p("yxy");
        let got = e("1 + yx").substitute_ring(&[v_xy, p("z")]).unwrap();
        assert_eq!(got.to_string(), "1 + zyxy");

        let id = [w("x"), w("y")];
        let a = e("2*x - y^-1 x + 1");
        assert_eq!(a.substitute_ring(&id).unwrap(), a);

        assert!((&e("y") - &e("y"))
            .substitute_ring(&[p("x"), p("z")])
            .unwrap()
            .is_zero());

        // collisions after substitution merge
        let merged = e("x - y").substitute_ring(&[p("z"), p("z")]).unwrap();
        assert!(merged.is_zero());
        assert!(matches!(
            a.substitute_ring(&[p("x")]),
            Err(WordError::ImageCountMismatch { .. })
        ));
    }

    #[test]
    fn augmentation_examples() {
        assert_eq!(
            GroupRingElement::zero(&Alphabet::rank2()).augmentation(),
            0.into()
        );
        assert_eq!(e("1 + yx").augmentation(), 2.into());
        assert_eq!(e("-x^-1 + x^-1 y^-1").augmentation(), 0.into());
    }

    #[test]
    fn rendering() {
        assert_eq!(e("0").to_string(), "0");
        assert_eq!(e("3*x y").to_string(), "3*xy");
        assert_eq!(e("yx + 1").to_string(), "1 + yx");
        assert_eq!(e("-2 - 5*x^-1 + x").to_string(), "-2 + x - 5*x^-1");
        assert_eq!(e("x - x").to_string(), "0");
        assert_eq!(e("-1").to_string(), "-1");
    }

    #[test]
    fn parse_errors() {
        let a = Alphabet::rank2();
        let err = parse_element("x + ", &a).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::ExpectedTerm);
        let err = parse_element("x + q", &a).unwrap_err();
        assert_eq!(err.offset, 4);
        let err = parse_element("1 - 2*", &a).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::ExpectedGenerator);
    }

    #[test]
    fn big_coefficients_do_not_overflow() {
        let mut a = e("2*x + 1");
        for _ in 0..7 {
            a = &a * &a;
        }
        // (1 + 2x)^128 has leading coefficient 2^128
        let top = a.coefficient(&w("x").pow(128));
        assert_eq!(top, BigInt::from(2).pow(128));
    }

    fn element() -> impl Strategy<Value = GroupRingElement> {
        let a = Alphabet::rank2();
        prop::collection::vec(
            (
                -5i64..=5,
                prop::collection::vec((0usize..2, prop::bool::ANY), 0..=8),
            ),
            0..=6,
        )
        .prop_map(move |terms| {
            let mut out = GroupRingElement::zero(&a);
            for (c, raw) in terms {
                let w = FreeWord::reduce(
                    &a,
                    raw.into_iter().map(|(g, i)| (g, if i { -1 } else { 1 })),
                )
                .unwrap();
                out.add_term(w.letters().to_vec(), c.into());
            }
            out
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in element(), b in element(), c in element()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert!((&a - &a).is_zero());
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        }

        #[test]
        fn substitution_is_a_ring_homomorphism(
            a in element(),
            b in element(),
            im in prop::collection::vec(prop::collection::vec((0usize..3, prop::bool::ANY), 0..=5), 2),
        ) {
            let xyz = Alphabet::rank3();
            let images: Vec<FreeWord> = im
                .into_iter()
                .map(|raw| FreeWord::reduce(&xyz, raw.into_iter().map(|(g, i)| (g, if i { -1 } else { 1 }))).unwrap())
                .collect();
            let sub = |x: &GroupRingElement| x.substitute_ring(&images).unwrap();
            prop_assert_eq!(sub(&(&a + &b)), &sub(&a) + &sub(&b));
            prop_assert_eq!(sub(&(&a * &b)), &sub(&a) * &sub(&b));
        }

        #[test]
        fn augmentation_is_multiplicative(a in element(), b in element()) {
            prop_assert_eq!((&a * &b).augmentation(), a.augmentation() * b.augmentation());
        }

        #[test]
        fn canonical_text_round_trip(a in element()) {
            let text = a.to_string();
            prop_assert_eq!(parse_element(&text, a.alphabet()).unwrap(), a);
        }
    }
}
