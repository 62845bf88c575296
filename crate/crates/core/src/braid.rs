//! Braid words in the Artin generators `b_1, ..., b_{n-1}`.
//!
//! A word is stored together with its strand count; the strand count is never
//! inferred from the letters because the closure depends on it.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A single letter `b_index^exponent` with `exponent = ±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub index: usize,
    pub exponent: i8,
}

impl Letter {
    pub fn new(index: usize, exponent: i8) -> Self {
        debug_assert!(exponent == 1 || exponent == -1);
        Letter { index, exponent }
    }

    /// Signed integer token: `-2` is `b_2^{-1}`.
    pub fn to_signed(self) -> i64 {
        self.index as i64 * self.exponent as i64
    }

    pub fn inverse(self) -> Self {
        Letter::new(self.index, -self.exponent)
    }
}

/// A braid word in `B_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    /// Builds a word, checking every generator index against `strands`.
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::InvalidStrands(strands));
        }
        for l in &letters {
            if l.index == 0 || l.index >= strands {
                return Err(Error::GeneratorOutOfRange {
                    index: l.index,
                    strands,
                });
            }
            if l.exponent != 1 && l.exponent != -1 {
                return Err(Error::Parse(format!("exponent {} is not ±1", l.exponent)));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Result<Self> {
        Self::new(strands, Vec::new())
    }

    /// Builds a word from signed integer tokens.
    pub fn from_signed(strands: usize, tokens: &[i64]) -> Result<Self> {
        if strands == 0 {
            return Err(Error::InvalidStrands(strands));
        }
        let mut letters = Vec::with_capacity(tokens.len());
        for &v in tokens {
            letters.push(letter_from_token(v, strands, &v.to_string())?);
        }
        Ok(BraidWord { strands, letters })
    }

    /// Parses whitespace-separated signed integers, e.g. `"2 -1 2"`.
    pub fn parse(text: &str, strands: usize) -> Result<Self> {
        if strands == 0 {
            return Err(Error::InvalidStrands(strands));
        }
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let v: i64 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("token {tok:?} is not an integer")))?;
            letters.push(letter_from_token(v, strands, tok)?);
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn to_signed(&self) -> Vec<i64> {
        self.letters.iter().map(|l| l.to_signed()).collect()
    }

    /// Sum of the exponents.
    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|l| l.exponent as i64).sum()
    }

    /// Concatenation, `self` first.
    pub fn product(&self, other: &BraidWord) -> Result<BraidWord> {
        self.check_same_strands(other)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Mirror image: same letters with every exponent negated.
    pub fn mirror(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().map(|l| l.inverse()).collect(),
        }
    }

    /// Cancels adjacent `b_i^{±1} b_i^{∓1}` pairs until none remain.
    pub fn free_reduce(&self) -> BraidWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            match out.last() {
                Some(&top) if top == l.inverse() => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        BraidWord {
            strands: self.strands,
            letters: out,
        }
    }

    /// Markov conjugation `α β α^{-1}`.
    pub fn markov_conjugate(&self, alpha: &BraidWord) -> Result<BraidWord> {
        alpha.product(self)?.product(&alpha.inverse())
    }

    /// Markov stabilization: embeds into `B_{n+1}` and appends `b_n^{sign}`.
    pub fn markov_stabilize(&self, sign: i8) -> Result<BraidWord> {
        if sign != 1 && sign != -1 {
            return Err(Error::Parse(format!("stabilization sign {sign} is not ±1")));
        }
        let mut letters = self.letters.clone();
        letters.push(Letter::new(self.strands, sign));
        Ok(BraidWord {
            strands: self.strands + 1,
            letters,
        })
    }

    /// Permutation induced on the strands: `perm[j]` is the bottom position of
    /// the strand starting at top position `j`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut pos: Vec<usize> = (0..self.strands).collect();
        for l in &self.letters {
            let (a, b) = (l.index - 1, l.index);
            for p in pos.iter_mut() {
                if *p == a {
                    *p = b;
                } else if *p == b {
                    *p = a;
                }
            }
        }
        pos
    }

    /// Number of components of the closure (cycles of the strand permutation).
    pub fn closure_components(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; self.strands];
        let mut cycles = 0;
        for start in 0..self.strands {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = perm[j];
            }
        }
        cycles
    }

    fn check_same_strands(&self, other: &BraidWord) -> Result<()> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch {
                left: self.strands,
                right: other.strands,
            });
        }
        Ok(())
    }
}

fn letter_from_token(v: i64, strands: usize, tok: &str) -> Result<Letter> {
    if v == 0 {
        return Err(Error::Parse(format!(
            "token {tok:?}: generator index 0 is not allowed"
        )));
    }
    let index = v.unsigned_abs() as usize;
    if index >= strands {
        return Err(Error::Parse(format!(
            "token {tok:?}: index out of range for {strands} strands (valid 1..={})",
            strands as i64 - 1
        )));
    }
    Ok(Letter::new(index, if v > 0 { 1 } else { -1 }))
}

impl fmt::Display for BraidWord {
    /// Canonical serialization: the signed tokens joined by single spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.letters {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{}", l.to_signed())?;
        }
        Ok(())
    }
}

/// JSON file form `{"strands": n, "word": [±i, ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BraidJson {
    pub strands: usize,
    pub word: Vec<i64>,
}

impl TryFrom<BraidJson> for BraidWord {
    type Error = Error;

    fn try_from(j: BraidJson) -> Result<Self> {
        BraidWord::from_signed(j.strands, &j.word)
    }
}

impl From<&BraidWord> for BraidJson {
    fn from(b: &BraidWord) -> Self {
        BraidJson {
            strands: b.strands,
            word: b.to_signed(),
        }
    }
}
