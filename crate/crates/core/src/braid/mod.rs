//! Braid words on `n` strands.
//!
//! Letters act left to right: `concat(a, b)` means "first `a`, then `b`",
//! which matches the right action of braids on row vectors.

mod handle;

use std::fmt;

use crate::error::{Error, Result};

pub use handle::{
    braid_equal, handle_reduce, is_trivial_word, is_trivial_word_with_budget,
    DEFAULT_HANDLE_BUDGET,
};

/// A generator `σ_i` or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    index: usize,
    inverse: bool,
}

impl Letter {
    /// `σ_index` (or its inverse). `index` must be at least 1.
    pub fn new(index: usize, inverse: bool) -> Self {
        assert!(index >= 1, "generator indices start at 1");
        Letter { index, inverse }
    }

    pub fn pos(index: usize) -> Self {
        Self::new(index, false)
    }

    pub fn neg(index: usize) -> Self {
        Self::new(index, true)
    }

    pub fn index(self) -> usize {
        self.index
    }

    pub fn is_inverse(self) -> bool {
        self.inverse
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inv(self) -> Letter {
        Letter {
            index: self.index,
            inverse: !self.inverse,
        }
    }

    /// Signed-integer notation: `σ_2^{-1}` is `-2`.
    pub fn to_int(self) -> i64 {
        self.sign() * self.index as i64
    }

    pub fn from_int(k: i64) -> Option<Letter> {
        (k != 0).then(|| Letter::new(k.unsigned_abs() as usize, k < 0))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_int())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self> {
        if strands < 2 {
            return Err(Error::InvalidInput(format!(
                "a braid needs at least 2 strands, got {strands}"
            )));
        }
        if let Some(bad) = letters.iter().find(|l| l.index > strands - 1) {
            return Err(Error::IndexOutOfRange {
                index: bad.to_int(),
                strands,
            });
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        Self::new(strands, Vec::new()).expect("identity braid")
    }

    pub fn from_ints(strands: usize, ints: &[i64]) -> Result<Self> {
        let letters = ints
            .iter()
            .map(|&k| Letter::from_int(k).ok_or_else(|| Error::ParseBraid("zero entry".into())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(strands, letters)
    }

    /// Whitespace- or comma-separated nonzero integers; `k` stands for
    /// `σ_|k|` with the sign of `k`.
    pub fn parse(text: &str, strands: usize) -> Result<Self> {
        let ints = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|tok| !tok.is_empty())
            .map(|tok| {
                let k: i64 = tok
                    .parse()
                    .map_err(|_| Error::ParseBraid(format!("malformed token `{tok}`")))?;
                if k == 0 {
                    return Err(Error::ParseBraid("zero is not a generator".into()));
                }
                Ok(k)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_ints(strands, &ints)
    }

    /// `Δ₃ = σ₁σ₂σ₁`.
    pub fn delta3() -> Self {
        Self::from_ints(3, &[1, 2, 1]).unwrap()
    }

    /// `Δ₄ = σ₁σ₂σ₁σ₃σ₂σ₁`.
    pub fn delta4() -> Self {
        Self::from_ints(4, &[1, 2, 1, 3, 2, 1]).unwrap()
    }

    /// `σ_index^exp` on `strands` strands.
    pub fn generator_power(strands: usize, index: usize, exp: i64) -> Result<Self> {
        let letter = Letter::new(index, exp < 0);
        Self::new(strands, vec![letter; exp.unsigned_abs() as usize])
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

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.sign()).sum()
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    fn check_strands(&self, other: &BraidWord) -> Result<()> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch {
                left: self.strands,
                right: other.strands,
            });
        }
        Ok(())
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        self.check_strands(other)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    /// `c · self · c⁻¹`.
    pub fn conjugate(&self, c: &BraidWord) -> Result<BraidWord> {
        c.concat(self)?.concat(&c.inverse())
    }

    /// `self^k`; negative `k` powers the inverse.
    pub fn pow(&self, k: i64) -> BraidWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord {
            strands: self.strands,
            letters,
        }
    }

    /// Cancels adjacent `σ_i^e σ_i^{-e}` pairs.
    pub fn free_reduce(&self) -> BraidWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        BraidWord {
            strands: self.strands,
            letters: out,
        }
    }

    /// The same letters viewed on more strands.
    pub fn embed(&self, strands: usize) -> Result<BraidWord> {
        if strands < self.strands {
            return Err(Error::StrandMismatch {
                left: self.strands,
                right: strands,
            });
        }
        Ok(BraidWord {
            strands,
            letters: self.letters.clone(),
        })
    }

    /// Deletes the strand starting at position `strand` (1-based).
    pub fn forget_strand(&self, strand: usize) -> Result<BraidWord> {
        self.forget_tracked(strand).map(|(w, _)| w)
    }

    /// Deletes the strand that starts at `start`, also returning the position
    /// where that strand ends. Feeding the end position into the next word
    /// makes forgetting compatible with concatenation.
    pub fn forget_tracked(&self, start: usize) -> Result<(BraidWord, usize)> {
        if self.strands < 3 {
            return Err(Error::InvalidInput(
                "forgetting a strand needs at least 3 strands".into(),
            ));
        }
        if start < 1 || start > self.strands {
            return Err(Error::StrandOutOfRange {
                strand: start,
                strands: self.strands,
            });
        }
        let mut pos = start;
        let mut letters = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            let j = l.index;
            if pos == j {
                pos = j + 1;
            } else if pos == j + 1 {
                pos = j;
            } else if j + 1 < pos {
                letters.push(l);
            } else {
                letters.push(Letter::new(j - 1, l.inverse));
            }
        }
        Ok((
            BraidWord {
                strands: self.strands - 1,
                letters,
            },
            pos,
        ))
    }

    /// Deletes several strands, each named by its initial position in `self`.
    pub fn forget_strands(&self, strands: &[usize]) -> Result<BraidWord> {
        let mut remaining: Vec<usize> = strands.to_vec();
        let mut word = self.clone();
        while let Some(s) = remaining.first().copied() {
            remaining.remove(0);
            word = word.forget_strand(s)?;
            for r in remaining.iter_mut() {
                if *r == s {
                    return Err(Error::InvalidInput(format!("strand {s} listed twice")));
                }
                if *r > s {
                    *r -= 1;
                }
            }
        }
        Ok(word)
    }

    /// Word-file line: `n: k1 k2 ... km`.
    pub fn to_line(&self) -> String {
        if self.is_empty() {
            format!("{}:", self.strands)
        } else {
            format!("{}: {}", self.strands, self)
        }
    }

    pub fn parse_line(line: &str) -> Result<BraidWord> {
        let (n, rest) = line
            .split_once(':')
            .ok_or_else(|| Error::ParseBraid(format!("missing `:` in `{line}`")))?;
        let strands: usize = n
            .trim()
            .parse()
            .map_err(|_| Error::ParseBraid(format!("bad strand count `{}`", n.trim())))?;
        Self::parse(rest, strands)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl serde::Serialize for BraidWord {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_line())
    }
}

/// Parses a word file: one `n: k1 ... km` braid per line, `#` starts a comment.
pub fn parse_word_file(text: &str) -> Result<Vec<BraidWord>> {
    text.lines()
        .map(|line| line.split('#').next().unwrap_or("").trim())
        .filter(|line| !line.is_empty())
        .map(BraidWord::parse_line)
        .collect()
}
