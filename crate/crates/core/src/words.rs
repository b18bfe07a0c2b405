//! Elements of a free group over a finite basis.
//!
//! Letters are encoded as `2 * generator + sign`, so the natural order of the
//! codes is `a1 < A1 < a2 < A2 < ...` and inversion is a single bit flip.

use std::fmt;

use crate::error::{Error, Result};

/// Largest rank expressible in the compact one-character-per-letter notation.
pub const MAX_RANK: usize = 26;

/// A basis `{a_1, ..., a_r}` of the free group `F`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Basis {
    rank: u8,
}

impl Basis {
    pub fn new(rank: usize) -> Result<Self> {
        if rank == 0 || rank > MAX_RANK {
            return Err(Error::InvalidRank(rank));
        }
        Ok(Basis { rank: rank as u8 })
    }

    pub fn rank(self) -> usize {
        self.rank as usize
    }

    /// Size of the symmetrized alphabet.
    pub fn letter_count(self) -> usize {
        2 * self.rank as usize
    }

    /// All letters of the symmetrized alphabet in canonical order.
    pub fn letters(self) -> impl Iterator<Item = Letter> {
        (0..self.letter_count() as u8).map(Letter)
    }

    pub fn generators(self) -> impl Iterator<Item = Letter> {
        (0..self.rank).map(|g| Letter(2 * g))
    }

    pub fn contains(self, letter: Letter) -> bool {
        letter.generator() < self.rank()
    }
}

/// A letter of the symmetrized alphabet: a generator or its formal inverse.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u8);

impl Letter {
    /// `generator` is zero-based.
    pub fn new(generator: usize, inverse: bool) -> Self {
        debug_assert!(generator < MAX_RANK);
        Letter(2 * generator as u8 + inverse as u8)
    }

    pub fn positive(generator: usize) -> Self {
        Letter::new(generator, false)
    }

    pub fn from_code(code: usize) -> Self {
        Letter(code as u8)
    }

    /// Position in the canonical letter order; dense in `0..2 * rank`.
    #[inline]
    pub fn code(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    #[inline]
    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    #[inline]
    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }

    pub fn to_char(self) -> char {
        let base = if self.is_inverse() { b'A' } else { b'a' };
        (base + self.generator() as u8) as char
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// An arbitrary, possibly unreduced, word over the symmetrized alphabet.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Free reduction with a single stack pass.
    pub fn reduce(&self) -> ReducedWord {
        ReducedWord::from_letters(self.0.iter().copied())
    }
}

impl From<ReducedWord> for Word {
    fn from(w: ReducedWord) -> Self {
        Word(w.0)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.0)
    }
}

/// A freely reduced word, i.e. an element of `F`. The empty word is the
/// identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedWord(Vec<Letter>);

impl ReducedWord {
    pub fn identity() -> Self {
        ReducedWord(Vec::new())
    }

    /// Reduces the letter sequence while collecting it.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut stack: Vec<Letter> = Vec::new();
        for x in letters {
            if stack.last() == Some(&x.inverse()) {
                stack.pop();
            } else {
                stack.push(x);
            }
        }
        ReducedWord(stack)
    }

    /// Parses and reduces.
    pub fn parse(text: &str, basis: Basis) -> Result<Self> {
        Ok(parse_word(text, basis)?.reduce())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn inverse(&self) -> ReducedWord {
        ReducedWord(self.0.iter().rev().map(|x| x.inverse()).collect())
    }

    /// `red(self · other)`: cancels across the junction only.
    pub fn concat(&self, other: &ReducedWord) -> ReducedWord {
        let mut cancel = 0;
        let (a, b) = (&self.0, &other.0);
        while cancel < a.len() && cancel < b.len() && a[a.len() - 1 - cancel] == b[cancel].inverse()
        {
            cancel += 1;
        }
        let mut out = Vec::with_capacity(a.len() + b.len() - 2 * cancel);
        out.extend_from_slice(&a[..a.len() - cancel]);
        out.extend_from_slice(&b[cancel..]);
        ReducedWord(out)
    }

    /// `red(g^-1 · self · g)`.
    pub fn conjugate_by(&self, g: &ReducedWord) -> ReducedWord {
        g.inverse().concat(self).concat(g)
    }

    pub fn power(&self, exponent: i64) -> ReducedWord {
        let base = if exponent < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut out = ReducedWord::identity();
        for _ in 0..exponent.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.first(), self.last()) {
            (Some(x), Some(y)) => self.0.len() == 1 || x != y.inverse(),
            _ => true,
        }
    }

    /// Factors `self = shell · body · shell^-1` with `body` cyclically reduced.
    pub fn cyclic_reduce(&self) -> CyclicDecomposition {
        let n = self.0.len();
        let mut k = 0;
        while 2 * k + 1 < n && self.0[k] == self.0[n - 1 - k].inverse() {
            k += 1;
        }
        CyclicDecomposition {
            shell: ReducedWord(self.0[..k].to_vec()),
            body: ReducedWord(self.0[k..n - k].to_vec()),
        }
    }

    pub fn is_prefix_of(&self, other: &ReducedWord) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn common_prefix(&self, other: &ReducedWord) -> ReducedWord {
        let k = self
            .0
            .iter()
            .zip(&other.0)
            .take_while(|(x, y)| x == y)
            .count();
        ReducedWord(self.0[..k].to_vec())
    }

    pub(crate) fn from_reduced_vec(letters: Vec<Letter>) -> Self {
        debug_assert!(letters.windows(2).all(|w| w[0] != w[1].inverse()));
        ReducedWord(letters)
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.0)
    }
}

fn write_letters(f: &mut fmt::Formatter<'_>, letters: &[Letter]) -> fmt::Result {
    if letters.is_empty() {
        return f.write_str("1");
    }
    for x in letters {
        write!(f, "{}", x.to_char())?;
    }
    Ok(())
}

/// `u = shell · body · shell^-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicDecomposition {
    pub shell: ReducedWord,
    pub body: ReducedWord,
}

/// Parses compact (`aB`) or explicit (`a1 a2^-1`) notation without reducing.
///
/// Compact: the k-th lowercase letter is `a_k`, uppercase its inverse. Explicit:
/// `a<k>` or `A<k>`. Any atom may carry an integer exponent `^n`. Whitespace is
/// ignored; `1` on its own (or an empty string) is the identity.
pub fn parse_word(text: &str, basis: Basis) -> Result<Word> {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() || chars == ['1'] {
        return Ok(Word::default());
    }
    let mut letters = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        i += 1;
        if !c.is_ascii_alphabetic() {
            return Err(Error::UnknownLetter(c));
        }
        let inverse = c.is_ascii_uppercase();
        let generator = if i < chars.len() && chars[i].is_ascii_digit() {
            if c.to_ascii_lowercase() != 'a' {
                return Err(Error::UnknownLetter(c));
            }
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            let index: usize = digits
                .parse()
                .map_err(|_| Error::MalformedExponent(digits.clone()))?;
            if index == 0 {
                return Err(Error::GeneratorOutOfRange {
                    index,
                    rank: basis.rank(),
                });
            }
            index - 1
        } else {
            (c.to_ascii_lowercase() as u8 - b'a') as usize
        };
        if generator >= basis.rank() {
            return Err(Error::GeneratorOutOfRange {
                index: generator + 1,
                rank: basis.rank(),
            });
        }
        let mut exponent: i64 = 1;
        if i < chars.len() && chars[i] == '^' {
            i += 1;
            let start = i;
            if i < chars.len() && chars[i] == '-' {
                i += 1;
            }
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let raw: String = chars[start..i].iter().collect();
            exponent = raw
                .parse()
                .map_err(|_| Error::MalformedExponent(raw.clone()))?;
        }
        let letter = Letter::new(generator, inverse);
        let letter = if exponent < 0 {
            letter.inverse()
        } else {
            letter
        };
        letters.extend(std::iter::repeat_n(
            letter,
            exponent.unsigned_abs() as usize,
        ));
    }
    Ok(Word(letters))
}
