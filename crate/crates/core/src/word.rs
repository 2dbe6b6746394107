//! Binary words and the word-level predicates.
//!
//! A [`Word`] is bit-packed with an explicit length. All positions in the
//! public interface are 1-based: position `i` names the symbol `u_i`, and
//! position `0` (used by insertions) means "before `u_1`".

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::limits::Limits;

const BLOCK: usize = 64;

/// A finite word over `{0, 1}`.
///
/// Symbol `u_p` lives at bit `(p - 1) % 64` of block `(p - 1) / 64`. Bits
/// past `len` are always zero, so the derived `Eq` and `Hash` are sound.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    len: usize,
    blocks: SmallVec<[u64; 2]>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn with_capacity(cap: usize) -> Self {
        Word {
            len: 0,
            blocks: SmallVec::with_capacity(cap.div_ceil(BLOCK)),
        }
    }

    /// `0^n` or `1^n`.
    pub fn repeat(bit: u8, n: usize) -> Self {
        let mut w = Word::with_capacity(n);
        for _ in 0..n {
            w.push(bit);
        }
        w
    }

    pub fn from_bits<I: IntoIterator<Item = u8>>(bits: I) -> Self {
        let mut w = Word::empty();
        for b in bits {
            w.push(b);
        }
        w
    }

    /// Parses the textual 0/1 form. The empty string is the empty word.
    pub fn parse(s: &str) -> Result<Self> {
        let mut w = Word::with_capacity(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => w.push(0),
                '1' => w.push(1),
                _ => {
                    return Err(Error::input(format!(
                        "word {s:?}: character {c:?} at offset {i} is not 0 or 1"
                    )))
                }
            }
        }
        Ok(w)
    }

    /// Decodes a packed index where `u_1` is the most significant of `n` bits.
    /// Integer order on indices is lexicographic order on words.
    pub fn from_index(index: u64, n: usize) -> Self {
        assert!(n <= 64, "packed words hold at most 64 symbols");
        let mut w = Word::with_capacity(n);
        for p in 0..n {
            w.push(((index >> (n - 1 - p)) & 1) as u8);
        }
        w
    }

    /// Inverse of [`Word::from_index`]. Panics if the word is longer than 64.
    pub fn to_index(&self) -> u64 {
        assert!(self.len <= 64, "packed words hold at most 64 symbols");
        self.iter().fold(0u64, |acc, b| (acc << 1) | b as u64)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Symbol at 0-based offset `i`; callers guarantee `i < len`.
    #[inline]
    pub(crate) fn bit(&self, i: usize) -> u8 {
        debug_assert!(i < self.len);
        ((self.blocks[i / BLOCK] >> (i % BLOCK)) & 1) as u8
    }

    /// Symbol `u_pos` (1-based).
    pub fn get(&self, pos: usize) -> Option<u8> {
        (pos >= 1 && pos <= self.len).then(|| self.bit(pos - 1))
    }

    pub fn push(&mut self, bit: u8) {
        debug_assert!(bit <= 1);
        if self.len.is_multiple_of(BLOCK) {
            self.blocks.push(0);
        }
        if bit != 0 {
            self.blocks[self.len / BLOCK] |= 1 << (self.len % BLOCK);
        }
        self.len += 1;
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = u8> + ExactSizeIterator + '_ {
        (0..self.len).map(move |i| self.bit(i))
    }

    pub fn to_vec(&self) -> Vec<u8> {
        self.iter().collect()
    }

    pub fn count_ones(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for b in other.iter() {
            w.push(b);
        }
        w
    }

    /// `bit` followed by `self`.
    pub fn prepend(&self, bit: u8) -> Word {
        let mut w = Word::with_capacity(self.len + 1);
        w.push(bit);
        for b in self.iter() {
            w.push(b);
        }
        w
    }

    /// The word with the symbol at 0-based offset `i` removed.
    pub(crate) fn without(&self, i: usize) -> Word {
        Word::from_bits(
            self.iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, b)| b),
        )
    }

    /// True iff `self` is a (not necessarily contiguous) subsequence of `other`.
    pub fn is_subsequence_of(&self, other: &Word) -> bool {
        let mut it = other.iter();
        self.iter().all(|b| it.any(|c| c == b))
    }

    /// Symbols at the given 1-based positions, which must be strictly increasing.
    pub fn subword(&self, positions: &[usize]) -> Result<Word> {
        let mut prev = 0usize;
        let mut w = Word::with_capacity(positions.len());
        for &p in positions {
            if p < 1 || p > self.len {
                return Err(Error::input(format!(
                    "position {p} outside [1, {}]",
                    self.len
                )));
            }
            if p <= prev {
                return Err(Error::input("positions must be strictly increasing"));
            }
            prev = p;
            w.push(self.bit(p - 1));
        }
        Ok(w)
    }

    /// The contiguous slice `u_x … u_y` with `1 <= x <= y <= |u|`.
    pub fn subinterval(&self, x: usize, y: usize) -> Result<Word> {
        if x < 1 || x > y || y > self.len {
            return Err(Error::input(format!(
                "interval [{x}, {y}] is not inside [1, {}]",
                self.len
            )));
        }
        Ok(self.slice(x - 1, y))
    }

    /// 0-based half-open slice; callers guarantee the bounds.
    pub(crate) fn slice(&self, start: usize, end: usize) -> Word {
        Word::from_bits((start..end).map(|i| self.bit(i)))
    }

    /// True iff all length-`lambda` subintervals are pairwise distinct.
    /// Vacuously true when `|u| <= lambda`.
    pub fn is_lambda_nonrepeating(&self, lambda: usize) -> Result<bool> {
        if lambda == 0 {
            return Err(Error::input("lambda must be at least 1"));
        }
        if self.len <= lambda {
            return Ok(true);
        }
        let windows = self.len - lambda + 1;
        // Pigeonhole: more windows than distinct length-lambda words.
        if lambda < 64 && windows as u128 > 1u128 << lambda {
            return Ok(false);
        }
        if lambda <= 64 {
            let mask = if lambda == 64 {
                u64::MAX
            } else {
                (1u64 << lambda) - 1
            };
            let mut seen = HashSet::with_capacity(windows);
            let mut acc = 0u64;
            for i in 0..self.len {
                acc = ((acc << 1) | self.bit(i) as u64) & mask;
                if i + 1 >= lambda && !seen.insert(acc) {
                    return Ok(false);
                }
            }
            Ok(true)
        } else {
            let mut seen = HashSet::with_capacity(windows);
            for s in 0..windows {
                if !seen.insert(self.slice(s, s + lambda)) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }

    /// `u^<m>`: the first `m` symbols of the infinite word `uuu…`.
    pub fn periodic_prefix(&self, m: usize) -> Result<Word> {
        if self.is_empty() {
            return Err(Error::input(
                "periodic prefix of the empty word is undefined",
            ));
        }
        Ok(Word::from_bits((0..m).map(|i| self.bit(i % self.len))))
    }
}

/// Number of lambda-repeating words in `{0,1}^n`, by exhaustive enumeration.
pub fn count_lambda_repeating(n: usize, lambda: usize, limits: &Limits) -> Result<u64> {
    if lambda == 0 {
        return Err(Error::input("lambda must be at least 1"));
    }
    limits.check_enum(n)?;
    if n <= lambda {
        return Ok(0);
    }
    let count = (0..1u64 << n)
        .into_par_iter()
        .filter(|&x| !crate::packed::is_lambda_nonrepeating(x, n, lambda))
        .count();
    Ok(count as u64)
}

impl Ord for Word {
    /// Lexicographic order; a proper prefix sorts first.
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.iter().zip(other.iter()) {
            match a.cmp(&b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.len.cmp(&other.len)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self
            .iter()
            .map(|b| if b == 1 { '1' } else { '0' })
            .collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(\"{self}\")")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Word::parse(s)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Word::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn subword_examples() {
        assert_eq!(w("0101010").subword(&[1, 2]).unwrap(), w("01"));
        assert_eq!(w("1000").subword(&[]).unwrap(), Word::empty());
        assert_eq!(w("1000").subword(&[1, 4]).unwrap(), w("10"));
        assert!(matches!(w("1000").subword(&[5]), Err(Error::Input(_))));
        assert!(matches!(w("1000").subword(&[0]), Err(Error::Input(_))));
        assert!(w("1000").subword(&[2, 2]).is_err());
    }

    #[test]
    fn subinterval_examples() {
        assert_eq!(w("0101010").subinterval(2, 4).unwrap(), w("101"));
        assert_eq!(w("1000").subinterval(1, 4).unwrap(), w("1000"));
        assert_eq!(w("1000").subinterval(2, 2).unwrap(), w("0"));
        assert!(w("1000").subinterval(3, 2).is_err());
        assert!(w("1000").subinterval(0, 2).is_err());
        assert!(w("1000").subinterval(2, 5).is_err());
    }

    #[test]
    fn nonrepeating_examples() {
        assert!(!w("0101").is_lambda_nonrepeating(2).unwrap());
        assert!(w("0011").is_lambda_nonrepeating(2).unwrap());
        assert!(Word::empty().is_lambda_nonrepeating(1).unwrap());
        assert!(w("0").is_lambda_nonrepeating(1).unwrap());
        assert!(w("0000").is_lambda_nonrepeating(4).unwrap());
        assert!(w("0").is_lambda_nonrepeating(0).is_err());
    }

    #[test]
    fn nonrepeating_long_windows() {
        // 70 symbols, lambda = 65 exercises the non-packed branch.
        let u = Word::repeat(0, 64).concat(&Word::repeat(1, 6));
        assert!(u.is_lambda_nonrepeating(65).unwrap());
        let v = Word::repeat(0, 70);
        assert!(!v.is_lambda_nonrepeating(65).unwrap());
    }

    #[test]
    fn periodic_prefix_examples() {
        assert_eq!(w("01").periodic_prefix(7).unwrap(), w("0101010"));
        assert_eq!(w("0110").periodic_prefix(3).unwrap(), w("011"));
        assert_eq!(w("1").periodic_prefix(0).unwrap(), Word::empty());
        assert!(Word::empty().periodic_prefix(3).is_err());
    }

    #[test]
    fn count_repeating_examples() {
        let lim = Limits::default();
        assert_eq!(count_lambda_repeating(2, 1, &lim).unwrap(), 2);
        assert_eq!(count_lambda_repeating(1, 1, &lim).unwrap(), 0);
        // Brute force over the 16 words of length 4 using the Word predicate.
        let brute = (0..16u64)
            .filter(|&x| !Word::from_index(x, 4).is_lambda_nonrepeating(2).unwrap())
            .count() as u64;
        assert_eq!(brute, 8);
        assert_eq!(count_lambda_repeating(4, 2, &lim).unwrap(), brute);
        assert!(matches!(
            count_lambda_repeating(29, 3, &lim),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn index_roundtrip_and_order() {
        for x in 0..64u64 {
            let u = Word::from_index(x, 6);
            assert_eq!(u.to_index(), x);
            let v = Word::from_index((x + 1) % 64, 6);
            assert_eq!(u < v, x < (x + 1) % 64);
        }
        assert!(w("01") < w("010"));
        assert!(w("1") > w("011"));
    }

    #[test]
    fn parse_rejects_other_characters() {
        assert!(Word::parse("0120").is_err());
        assert_eq!(Word::parse("").unwrap().len(), 0);
        assert_eq!(w("1011").to_string(), "1011");
    }

    #[test]
    fn long_words_cross_blocks() {
        let s: String = (0..150)
            .map(|i| if i % 3 == 0 { '1' } else { '0' })
            .collect();
        let u = w(&s);
        assert_eq!(u.len(), 150);
        assert_eq!(u.to_string(), s);
        assert_eq!(u.count_ones(), 50);
        assert_eq!(u.get(1), Some(1));
        assert_eq!(u.get(150), Some(0));
        assert_eq!(u.get(151), None);
    }
}
