//! Free-group alphabets, letters and words.
//!
//! Words are written one character per letter: lowercase `a..z` are the
//! generators `x1..x26` and the matching uppercase character is the inverse.
//! The empty word is written as the empty string or `1`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_RANK: usize = 26;

/// Basis `x1..xk` of a free group of rank `k >= 2`, together with the
/// involutive alphabet of `2k` letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct FreeAlphabet {
    rank: usize,
}

impl FreeAlphabet {
    pub fn new(rank: usize) -> Result<Self> {
        if !(2..=MAX_RANK).contains(&rank) {
            return Err(Error::InvalidRank(rank));
        }
        Ok(FreeAlphabet { rank })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of letters, `2k`.
    pub fn size(&self) -> usize {
        2 * self.rank
    }

    /// All letters in canonical order: `x1, x1^-1, x2, x2^-1, ...`.
    pub fn letters(&self) -> impl Iterator<Item = Letter> + Clone {
        (0..self.size() as u8).map(Letter)
    }

    pub fn contains(&self, letter: Letter) -> bool {
        letter.generator() < self.rank
    }
}

impl TryFrom<usize> for FreeAlphabet {
    type Error = Error;

    fn try_from(rank: usize) -> Result<Self> {
        FreeAlphabet::new(rank)
    }
}

impl From<FreeAlphabet> for usize {
    fn from(alphabet: FreeAlphabet) -> usize {
        alphabet.rank
    }
}

/// A generator or an inverse generator.
///
/// Encoded as `2 * generator + (1 if inverse)`, which makes the derived
/// ordering the canonical one (generator index first, `+1` before `-1`) and
/// turns inversion into flipping the low bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u8);

impl Letter {
    pub fn positive(generator: usize) -> Letter {
        assert!(generator < MAX_RANK, "generator index {generator} out of range");
        Letter((2 * generator) as u8)
    }

    pub fn negative(generator: usize) -> Letter {
        Letter::positive(generator).inverse()
    }

    pub fn from_code(code: usize) -> Letter {
        assert!(code < 2 * MAX_RANK, "letter code {code} out of range");
        Letter(code as u8)
    }

    pub fn code(self) -> usize {
        self.0 as usize
    }

    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    /// `+1` or `-1`.
    pub fn sign(self) -> i8 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }

    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'a'..='z' => Some(Letter::positive(c as usize - 'a' as usize)),
            'A'..='Z' => Some(Letter::negative(c as usize - 'A' as usize)),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        let base = if self.is_inverse() { b'A' } else { b'a' };
        (base + self.generator() as u8) as char
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

fn parse_letters(text: &str, alphabet: FreeAlphabet) -> Result<Vec<Letter>> {
    if text == "1" {
        return Ok(Vec::new());
    }
    text.chars()
        .enumerate()
        .map(|(position, c)| {
            let letter = Letter::from_char(c).ok_or_else(|| Error::parse(position, format!("unexpected character '{c}'")))?;
            if !alphabet.contains(letter) {
                return Err(Error::parse(position, format!("letter '{c}' is outside the rank-{} alphabet", alphabet.rank())));
            }
            Ok(letter)
        })
        .collect()
}

fn write_letters(letters: &[Letter], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for letter in letters {
        write!(f, "{letter}")?;
    }
    Ok(())
}

/// A finite word over the involutive alphabet, not necessarily reduced.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn parse(text: &str, alphabet: FreeAlphabet) -> Result<Word> {
        parse_letters(text, alphabet).map(Word)
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

    /// Formal inverse: reversed, every letter inverted.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(&self.0, f)
    }
}

impl From<ReducedWord> for Word {
    fn from(w: ReducedWord) -> Word {
        Word(w.0)
    }
}

/// A freely reduced word: no letter is adjacent to its inverse.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ReducedWord(Vec<Letter>);

impl ReducedWord {
    pub fn empty() -> ReducedWord {
        ReducedWord(Vec::new())
    }

    /// Wraps `letters` if they are already reduced.
    pub fn from_letters(letters: Vec<Letter>) -> Option<ReducedWord> {
        if is_reduced(&letters) {
            Some(ReducedWord(letters))
        } else {
            None
        }
    }

    /// Parses and freely reduces `text`.
    pub fn parse(text: &str, alphabet: FreeAlphabet) -> Result<ReducedWord> {
        Word::parse(text, alphabet).map(|w| free_reduce(&w))
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

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn inverse(&self) -> ReducedWord {
        ReducedWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Group product, freely reduced.
    pub fn mul(&self, other: &ReducedWord) -> ReducedWord {
        let mut letters = self.0.clone();
        for &l in &other.0 {
            push_reducing(&mut letters, l);
        }
        ReducedWord(letters)
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.first(), self.last()) {
            (Some(first), Some(last)) => self.len() == 1 || first != last.inverse(),
            _ => true,
        }
    }

    /// Whether `factor` occurs as a contiguous subword.
    pub fn contains_factor(&self, factor: &[Letter]) -> bool {
        factor.is_empty() || self.0.windows(factor.len()).any(|w| w == factor)
    }

    /// Whether `factor` occurs in the cyclic word (wrapping around the end).
    pub fn contains_cyclic_factor(&self, factor: &[Letter]) -> bool {
        if factor.is_empty() {
            return true;
        }
        if factor.len() > self.len() {
            return false;
        }
        let doubled: Vec<Letter> = self.0.iter().chain(self.0.iter()).copied().collect();
        doubled[..self.len() + factor.len() - 1].windows(factor.len()).any(|w| w == factor)
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(&self.0, f)
    }
}

pub fn is_reduced(letters: &[Letter]) -> bool {
    letters.windows(2).all(|p| p[1] != p[0].inverse())
}

fn push_reducing(stack: &mut Vec<Letter>, letter: Letter) {
    if stack.last() == Some(&letter.inverse()) {
        stack.pop();
    } else {
        stack.push(letter);
    }
}

/// Free reduction: cancels adjacent inverse pairs until none remain.
pub fn free_reduce(word: &Word) -> ReducedWord {
    let mut stack = Vec::with_capacity(word.len());
    for &l in word.letters() {
        push_reducing(&mut stack, l);
    }
    ReducedWord(stack)
}

/// `w = u · core · u⁻¹` with no cancellation and `core` cyclically reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclicDecomposition {
    pub prefix: ReducedWord,
    pub core: ReducedWord,
}

impl CyclicDecomposition {
    /// `prefix · core · prefix⁻¹`, letter by letter.
    pub fn reassemble(&self) -> Word {
        let mut letters = self.prefix.letters().to_vec();
        letters.extend_from_slice(self.core.letters());
        letters.extend(self.prefix.inverse().into_letters());
        Word::new(letters)
    }
}

pub fn cyclic_decompose(w: &ReducedWord) -> CyclicDecomposition {
    let letters = w.letters();
    let mut depth = 0;
    while letters.len() >= 2 * depth + 2 && letters[depth] == letters[letters.len() - 1 - depth].inverse() {
        depth += 1;
    }
    CyclicDecomposition {
        prefix: ReducedWord(letters[..depth].to_vec()),
        core: ReducedWord(letters[depth..letters.len() - depth].to_vec()),
    }
}

/// Cyclically reduced core of `w`.
pub fn cyclic_core(w: &ReducedWord) -> ReducedWord {
    cyclic_decompose(w).core
}

/// `|Σⁿ ∩ Red(X)|`: 1 for `n = 0`, `2k(2k-1)^(n-1)` otherwise.
pub fn count_reduced_sphere(alphabet: FreeAlphabet, n: usize) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    let size = alphabet.size() as u32;
    BigUint::from(size) * BigUint::from(size - 1).pow((n - 1) as u32)
}

/// `|B(n) ∩ Red(X)|`, the number of reduced words of length at most `n`.
pub fn count_reduced_ball(alphabet: FreeAlphabet, n: usize) -> BigUint {
    (0..=n).fold(BigUint::zero(), |acc, i| acc + count_reduced_sphere(alphabet, i))
}

/// All reduced words of length exactly `n`, in shortlex order.
pub fn reduced_words_of_length(alphabet: FreeAlphabet, n: usize) -> Vec<ReducedWord> {
    let mut layer = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(layer.len() * (alphabet.size() - 1));
        for w in &layer {
            for l in alphabet.letters() {
                if w.last().is_none_or(|&last: &Letter| last != l.inverse()) {
                    let mut v = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
        }
        layer = next;
    }
    layer.into_iter().map(ReducedWord).collect()
}

/// Reduced words of length at most `n`, in shortlex order.
pub fn reduced_words_up_to(alphabet: FreeAlphabet, n: usize) -> Vec<ReducedWord> {
    (0..=n).flat_map(|i| reduced_words_of_length(alphabet, i)).collect()
}
