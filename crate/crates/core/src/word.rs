//! Letters, alphabets and words.
//!
//! Letters are stored as small integers: over `X` the letter `x0` is `0` and
//! `x1` is `1`; over `Y` (and the indexed family `XIndexed`) the letter `y_i`
//! is `i >= 1`. The letter order used by every Lyndon computation is the
//! numeric order of these codes.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Alphabet {
    /// The two-letter alphabet `{x0 < x1}` of the Fuchs equation.
    X,
    /// The indexed alphabet `{y1 < y2 < ...}`.
    Y,
    /// The indexed family `{x_i}_{i >= 1}` used as codomain of the diagram
    /// morphism onto words. Weighted like `Y`.
    XIndexed,
}

impl Alphabet {
    pub fn is_indexed(self) -> bool {
        !matches!(self, Alphabet::X)
    }

    pub fn letter_weight(self, letter: u32) -> usize {
        match self {
            Alphabet::X => 1,
            _ => letter as usize,
        }
    }

    pub fn check_letter(self, letter: u32) -> Result<()> {
        let ok = match self {
            Alphabet::X => letter <= 1,
            _ => letter >= 1,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Parse(format!("letter {letter} not in alphabet {self:?}")))
        }
    }

    pub fn ensure(self, other: Alphabet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch { expected: self, found: other })
        }
    }
}

/// A finite word. Ordering is graded: first by weight, then lexicographic on
/// letters (the ordering used for every printed series).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: Alphabet,
    letters: Vec<u32>,
}

impl Word {
    pub fn empty(alphabet: Alphabet) -> Self {
        Word { alphabet, letters: Vec::new() }
    }

    pub fn new(alphabet: Alphabet, letters: Vec<u32>) -> Result<Self> {
        for &l in &letters {
            alphabet.check_letter(l)?;
        }
        Ok(Word { alphabet, letters })
    }

    /// Builds a word without validating letters; callers guarantee them.
    pub(crate) fn from_raw(alphabet: Alphabet, letters: Vec<u32>) -> Self {
        Word { alphabet, letters }
    }

    pub fn x(letters: &[u32]) -> Self {
        Word::new(Alphabet::X, letters.to_vec()).expect("X letters are 0 or 1")
    }

    pub fn y(indices: &[u32]) -> Self {
        Word::new(Alphabet::Y, indices.to_vec()).expect("Y indices are positive")
    }

    pub fn letter(alphabet: Alphabet, l: u32) -> Self {
        Word::new(alphabet, vec![l]).expect("valid letter")
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.letters.iter().map(|&l| self.alphabet.letter_weight(l)).sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        debug_assert_eq!(self.alphabet, other.alphabet);
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word { alphabet: self.alphabet, letters }
    }

    pub fn try_concat(&self, other: &Word) -> Result<Word> {
        self.alphabet.ensure(other.alphabet)?;
        Ok(self.concat(other))
    }

    pub fn first(&self) -> Option<u32> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<u32> {
        self.letters.last().copied()
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Word {
        Word { alphabet: self.alphabet, letters: self.letters[range].to_vec() }
    }

    pub fn reversed(&self) -> Word {
        let mut letters = self.letters.clone();
        letters.reverse();
        Word { alphabet: self.alphabet, letters }
    }

    /// Pure lexicographic comparison on letters (no grading).
    pub fn lex_cmp(&self, other: &Word) -> Ordering {
        self.letters.cmp(&other.letters)
    }

    /// Convergent in the polyzeta sense: for `Y`, nonempty with first index
    /// at least 2; for `X`, starts with `x0` and ends with `x1`.
    pub fn is_convergent(&self) -> bool {
        match self.alphabet {
            Alphabet::X => self.first() == Some(0) && self.last() == Some(1),
            _ => self.first().is_some_and(|l| l >= 2),
        }
    }

    /// Parses the text encoding: X-words as strings over `0`/`1`, indexed
    /// words as comma-separated positive integers (optionally bracketed).
    pub fn parse(alphabet: Alphabet, text: &str) -> Result<Word> {
        let t = text.trim();
        match alphabet {
            Alphabet::X => {
                let t = if t == "ε" { "" } else { t };
                let letters = t
                    .chars()
                    .map(|c| match c {
                        '0' => Ok(0),
                        '1' => Ok(1),
                        _ => Err(Error::Parse(format!("invalid X letter {c:?} in {text:?}"))),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Word { alphabet, letters })
            }
            _ => {
                let t = t.trim_start_matches('[').trim_end_matches(']').trim();
                if t.is_empty() {
                    return Ok(Word::empty(alphabet));
                }
                let letters = t
                    .split(',')
                    .map(|s| {
                        s.trim()
                            .parse::<u32>()
                            .map_err(|_| Error::Parse(format!("invalid index {s:?} in {text:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Word::new(alphabet, letters)
            }
        }
    }

    /// Text encoding used by the command line (`"011"`, `"2,1"`).
    pub fn encode(&self) -> String {
        match self.alphabet {
            Alphabet::X => self.letters.iter().map(|l| if *l == 0 { '0' } else { '1' }).collect(),
            _ => self.letters.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(","),
        }
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.alphabet
            .cmp(&other.alphabet)
            .then_with(|| self.weight().cmp(&other.weight()))
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Printed form: X-words as bit strings (`ε` for the empty word), indexed
/// words as `[2,1]`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.alphabet {
            Alphabet::X if self.is_empty() => write!(f, "ε"),
            Alphabet::X => write!(f, "{}", self.encode()),
            _ => write!(f, "[{}]", self.encode()),
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All words of exactly the given weight, in graded order.
pub fn words_of_weight(alphabet: Alphabet, weight: usize) -> Vec<Word> {
    let mut out = Vec::new();
    match alphabet {
        Alphabet::X => {
            for bits in 0..(1u64 << weight) {
                let letters = (0..weight).map(|i| ((bits >> (weight - 1 - i)) & 1) as u32).collect();
                out.push(Word::from_raw(alphabet, letters));
            }
        }
        _ => compositions(weight, &mut Vec::new(), &mut |c| {
            out.push(Word::from_raw(alphabet, c.to_vec()));
        }),
    }
    out.sort();
    out
}

/// All words of weight at most `max_weight` (including the empty word).
pub fn words_up_to(alphabet: Alphabet, max_weight: usize) -> Vec<Word> {
    (0..=max_weight).flat_map(|w| words_of_weight(alphabet, w)).collect()
}

fn compositions(n: usize, prefix: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if n == 0 {
        f(prefix);
        return;
    }
    for first in 1..=n {
        prefix.push(first as u32);
        compositions(n - first, prefix, f);
        prefix.pop();
    }
}
