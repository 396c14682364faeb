//! Reduced words in a free group of finite rank.
//!
//! A [`FreeWord`] is always stored freely reduced, one letter per generator
//! occurrence with exponent `±1`. Equality is syntactic equality of the reduced
//! letter sequence, which solves the word problem for free groups.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use thiserror::Error;

/// Largest exponent magnitude accepted by the word parser.
pub const MAX_PARSED_EXPONENT: i64 = 1 << 20;

/// Errors raised when building an [`Alphabet`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlphabetError {
    #[error("an alphabet needs at least one generator")]
    Empty,
    #[error(
        "generator name {0:?} is not an identifier (letter followed by letters, digits or '_')"
    )]
    InvalidName(String),
    #[error("generator name {0:?} appears more than once")]
    DuplicateName(String),
}

/// Errors raised by word operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("generator index {index} out of range for an alphabet of rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("exponent {0} is not +1 or -1")]
    BadExponent(i32),
    #[error("words live over different alphabets ({left} vs {right})")]
    AlphabetMismatch { left: String, right: String },
    #[error("substitution needs {expected} images, got {found}")]
    ImageCountMismatch { expected: usize, found: usize },
}

/// What went wrong while parsing a word.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected a generator name")]
    ExpectedGenerator,
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("expected exponent digits after '^'")]
    ExpectedExponent,
    #[error("exponent must be nonzero")]
    ZeroExponent,
    #[error("exponent magnitude exceeds {MAX_PARSED_EXPONENT}")]
    ExponentTooLarge,
    #[error("expected whitespace between terms")]
    ExpectedWhitespace,
    #[error("unexpected character {0:?}")]
    Unexpected(char),
    #[error("expected a term")]
    ExpectedTerm,
}

/// A syntax error in the word grammar, located by byte offset.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: {kind}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub(crate) fn new(offset: usize, kind: ParseErrorKind) -> Self {
        ParseError { offset, kind }
    }
}

/// An ordered list of distinct generator names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Arc<Alphabet>, AlphabetError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(AlphabetError::Empty);
        }
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(AlphabetError::InvalidName(name.clone()));
            }
            if names[..i].contains(name) {
                return Err(AlphabetError::DuplicateName(name.clone()));
            }
        }
        Ok(Arc::new(Alphabet { names }))
    }

    /// The default rank-2 alphabet `(x, y)`.
    pub fn rank2() -> Arc<Alphabet> {
        static XY: OnceLock<Arc<Alphabet>> = OnceLock::new();
        XY.get_or_init(|| Alphabet::new(["x", "y"]).unwrap())
            .clone()
    }

    /// The default rank-3 alphabet `(x, y, z)`.
    pub fn rank3() -> Arc<Alphabet> {
        static XYZ: OnceLock<Arc<Alphabet>> = OnceLock::new();
        XYZ.get_or_init(|| Alphabet::new(["x", "y", "z"]).unwrap())
            .clone()
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// When every generator is a single character, adjacent generators may be
    /// written without a separating space.
    pub fn single_char_names(&self) -> bool {
        self.names.iter().all(|n| n.len() == 1)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.names.join(","))
    }
}

fn same_alphabet(a: &Arc<Alphabet>, b: &Arc<Alphabet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

pub(crate) fn check_alphabets(a: &Arc<Alphabet>, b: &Arc<Alphabet>) -> Result<(), WordError> {
    if same_alphabet(a, b) {
        Ok(())
    } else {
        Err(WordError::AlphabetMismatch {
            left: a.to_string(),
            right: b.to_string(),
        })
    }
}

/// One generator or its inverse.
///
/// The derived order (generator index, then `+1` before `-1`) is the letter
/// order used by shortlex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inv(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    pub fn exponent(self) -> i32 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }
}

/// Pushes `letter` onto an already reduced stack, cancelling if possible.
pub(crate) fn push_reduced(stack: &mut Vec<Letter>, letter: Letter) {
    match stack.last() {
        Some(&top) if top.cancels(letter) => {
            stack.pop();
        }
        _ => stack.push(letter),
    }
}

/// Compares letter sequences by length first, then lexicographically.
pub(crate) fn shortlex(a: &[Letter], b: &[Letter]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// A freely reduced word over an explicit alphabet.
#[derive(Clone)]
pub struct FreeWord {
    alphabet: Arc<Alphabet>,
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn identity(alphabet: &Arc<Alphabet>) -> FreeWord {
        FreeWord {
            alphabet: alphabet.clone(),
            letters: Vec::new(),
        }
    }

    /// The word consisting of the single generator `index`.
    pub fn generator(alphabet: &Arc<Alphabet>, index: usize) -> Result<FreeWord, WordError> {
        if index >= alphabet.size() {
            return Err(WordError::IndexOutOfRange {
                index,
                rank: alphabet.size(),
            });
        }
        Ok(FreeWord {
            alphabet: alphabet.clone(),
            letters: vec![Letter::new(index, false)],
        })
    }

    /// Freely reduces a raw `(generator index, ±1)` sequence.
    pub fn reduce<I>(alphabet: &Arc<Alphabet>, raw: I) -> Result<FreeWord, WordError>
    where
        I: IntoIterator<Item = (usize, i32)>,
    {
        let mut stack = Vec::new();
        for (index, exponent) in raw {
            if index >= alphabet.size() {
                return Err(WordError::IndexOutOfRange {
                    index,
                    rank: alphabet.size(),
                });
            }
            let inverse = match exponent {
                1 => false,
                -1 => true,
                e => return Err(WordError::BadExponent(e)),
            };
            push_reduced(&mut stack, Letter::new(index, inverse));
        }
        Ok(FreeWord {
            alphabet: alphabet.clone(),
            letters: stack,
        })
    }

    /// Reduces a letter sequence that is already known to be in range.
    pub fn from_letters<I>(alphabet: &Arc<Alphabet>, letters: I) -> Result<FreeWord, WordError>
    where
        I: IntoIterator<Item = Letter>,
    {
        FreeWord::reduce(
            alphabet,
            letters.into_iter().map(|l| (l.generator, l.exponent())),
        )
    }

    /// Trusted constructor for sequences produced by this crate.
    pub(crate) fn from_reduced(alphabet: Arc<Alphabet>, letters: Vec<Letter>) -> FreeWord {
        debug_assert!(letters.windows(2).all(|w| !w[0].cancels(w[1])));
        FreeWord { alphabet, letters }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn multiply(&self, other: &FreeWord) -> Result<FreeWord, WordError> {
        check_alphabets(&self.alphabet, &other.alphabet)?;
        Ok(self.mul_same(other))
    }

    pub(crate) fn mul_same(&self, other: &FreeWord) -> FreeWord {
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut letters, l);
        }
        FreeWord {
            alphabet: self.alphabet.clone(),
            letters,
        }
    }

    pub fn invert(&self) -> FreeWord {
        FreeWord {
            alphabet: self.alphabet.clone(),
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    /// `self^n` for any integer `n`.
    pub fn pow(&self, n: i64) -> FreeWord {
        let base = if n < 0 { self.invert() } else { self.clone() };
        let mut out = FreeWord::identity(&self.alphabet);
        for _ in 0..n.unsigned_abs() {
            out = out.mul_same(&base);
        }
        out
    }

    /// Applies the homomorphism sending generator `k` to `images[k]`.
    ///
    /// The result lives over the images' alphabet.
    pub fn substitute(&self, images: &[FreeWord]) -> Result<FreeWord, WordError> {
        if images.len() != self.alphabet.size() {
            return Err(WordError::ImageCountMismatch {
                expected: self.alphabet.size(),
                found: images.len(),
            });
        }
        let target = images[0].alphabet.clone();
        for im in &images[1..] {
            check_alphabets(&target, &im.alphabet)?;
        }
        let inverses: Vec<FreeWord> = images.iter().map(FreeWord::invert).collect();
        let mut letters = Vec::new();
        for l in &self.letters {
            let image = if l.inverse {
                &inverses[l.generator]
            } else {
                &images[l.generator]
            };
            for &m in &image.letters {
                push_reduced(&mut letters, m);
            }
        }
        Ok(FreeWord {
            alphabet: target,
            letters,
        })
    }

    pub fn parse(text: &str, alphabet: &Arc<Alphabet>) -> Result<FreeWord, ParseError> {
        parse_word(text, alphabet)
    }
}

impl PartialEq for FreeWord {
    fn eq(&self, other: &Self) -> bool {
        self.letters == other.letters && same_alphabet(&self.alphabet, &other.alphabet)
    }
}

impl Eq for FreeWord {}

impl Hash for FreeWord {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.letters.hash(state);
    }
}

impl PartialOrd for FreeWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Shortlex on the letters; ties across alphabets broken by generator names.
impl Ord for FreeWord {
    fn cmp(&self, other: &Self) -> Ordering {
        shortlex(&self.letters, &other.letters)
            .then_with(|| self.alphabet.names.cmp(&other.alphabet.names))
    }
}

impl fmt::Debug for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeWord({})", self)
    }
}

/// Renders with run-length exponents, `"1"` for the identity.
impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_letters(&self.alphabet, &self.letters))
    }
}

pub(crate) fn format_letters(alphabet: &Alphabet, letters: &[Letter]) -> String {
    if letters.is_empty() {
        return "1".to_string();
    }
    let compact = alphabet.single_char_names();
    let mut out = String::new();
    let mut prev_plain = false;
    let mut i = 0;
    while i < letters.len() {
        let l = letters[i];
        let run = letters[i..].iter().take_while(|&&m| m == l).count();
        let plain = run == 1 && !l.inverse;
        if i > 0 && !(compact && plain && prev_plain) {
            out.push(' ');
        }
        out.push_str(alphabet.name(l.generator));
        if !plain {
            out.push('^');
            if l.inverse {
                out.push('-');
            }
            out.push_str(&run.to_string());
        }
        prev_plain = plain;
        i += run;
    }
    out
}

/// Canonical text of a word.
pub fn format_word(w: &FreeWord) -> String {
    w.to_string()
}

/// Parses the word grammar:
///
/// ```text
/// word := "1" | term (WS term)*
/// term := NAME ("^" SIGN? DIGITS)?
/// ```
///
/// When every generator name is a single character, an undeclared identifier
/// such as `yxy` is read as the juxtaposition of its characters; an exponent
/// then applies to the last one.
pub fn parse_word(text: &str, alphabet: &Arc<Alphabet>) -> Result<FreeWord, ParseError> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos] == b' ' {
            *pos += 1;
        }
    };
    skip_ws(&mut pos);
    let mut end = bytes.len();
    while end > pos && bytes[end - 1] == b' ' {
        end -= 1;
    }
    if pos == end || &text[pos..end] == "1" {
        return Ok(FreeWord::identity(alphabet));
    }

    let mut letters: Vec<Letter> = Vec::new();
    loop {
        let start = pos;
        match bytes.get(pos) {
            Some(c) if c.is_ascii_alphabetic() => {}
            Some(_) => {
                let ch = text[pos..].chars().next().unwrap();
                return Err(ParseError::new(
                    pos,
                    if ch.is_ascii_digit() || ch == '^' {
                        ParseErrorKind::ExpectedGenerator
                    } else {
                        ParseErrorKind::Unexpected(ch)
                    },
                ));
            }
            None => return Err(ParseError::new(pos, ParseErrorKind::ExpectedGenerator)),
        }
        while pos < end && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_') {
            pos += 1;
        }
        let name = &text[start..pos];
        let gens: Vec<usize> = match alphabet.index_of(name) {
            Some(i) => vec![i],
            None if alphabet.single_char_names() => name
                .chars()
                .map(|c| alphabet.index_of(c.encode_utf8(&mut [0; 4])))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| {
                    ParseError::new(start, ParseErrorKind::UnknownGenerator(name.to_string()))
                })?,
            None => {
                return Err(ParseError::new(
                    start,
                    ParseErrorKind::UnknownGenerator(name.to_string()),
                ))
            }
        };

        let mut exponent: i64 = 1;
        if pos < end && bytes[pos] == b'^' {
            pos += 1;
            let mut negative = false;
            if pos < end && (bytes[pos] == b'-' || bytes[pos] == b'+') {
                negative = bytes[pos] == b'-';
                pos += 1;
            }
            let digits_start = pos;
            while pos < end && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if pos == digits_start {
                return Err(ParseError::new(pos, ParseErrorKind::ExpectedExponent));
            }
            let magnitude: i64 = text[digits_start..pos]
                .parse()
                .ok()
                .filter(|&m| m <= MAX_PARSED_EXPONENT)
                .ok_or_else(|| ParseError::new(digits_start, ParseErrorKind::ExponentTooLarge))?;
            if magnitude == 0 {
                return Err(ParseError::new(digits_start, ParseErrorKind::ZeroExponent));
            }
            exponent = if negative { -magnitude } else { magnitude };
        }

        let (last, init) = gens.split_last().expect("identifier is nonempty");
        for &g in init {
            push_reduced(&mut letters, Letter::new(g, false));
        }
        let letter = Letter::new(*last, exponent < 0);
        for _ in 0..exponent.unsigned_abs() {
            push_reduced(&mut letters, letter);
        }

        if pos == end {
            break;
        }
        if bytes[pos] != b' ' {
            return Err(ParseError::new(pos, ParseErrorKind::ExpectedWhitespace));
        }
        skip_ws(&mut pos);
    }
    Ok(FreeWord::from_reduced(alphabet.clone(), letters))
}
