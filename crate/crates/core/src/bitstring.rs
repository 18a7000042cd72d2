//! Fixed-length binary genotypes.
//!
//! Bits are packed little-endian into `u64` words: position `i` (0-based,
//! leftmost first) lives in word `i / 64` at bit `i % 64`. Bits beyond the
//! length are always zero.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Error, Result};

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bitstring {
    len: usize,
    words: Vec<u64>,
}

fn word_count(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// Mask selecting the valid bits of the last word.
fn tail_mask(len: usize) -> u64 {
    match len % WORD {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

/// Mask of the first `k` bits (0 ≤ k ≤ 64) of a word.
fn low_mask(k: usize) -> u64 {
    if k >= WORD {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

impl Bitstring {
    pub fn zeros(len: usize) -> Result<Self> {
        if len == 0 {
            return Err(invalid("bitstring length must be positive"));
        }
        Ok(Self {
            len,
            words: vec![0; word_count(len)],
        })
    }

    pub fn ones(len: usize) -> Result<Self> {
        let mut s = Self::zeros(len)?;
        s.words.iter_mut().for_each(|w| *w = u64::MAX);
        s.clear_tail();
        Ok(s)
    }

    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        let mut s = Self::zeros(bits.len())?;
        for (i, _) in bits.iter().enumerate().filter(|(_, b)| **b) {
            s.words[i / WORD] |= 1 << (i % WORD);
        }
        Ok(s)
    }

    /// `1^a 0^(len-a)`.
    pub fn leading_block(len: usize, a: usize) -> Result<Self> {
        if a > len {
            return Err(invalid(format!("block of {a} ones exceeds length {len}")));
        }
        let mut s = Self::zeros(len)?;
        for (w, word) in s.words.iter_mut().enumerate() {
            let start = w * WORD;
            if a > start {
                *word = low_mask(a - start);
            }
        }
        Ok(s)
    }

    /// Uniformly random string; consumes one `u64` per word.
    pub fn random<R: rand::Rng + ?Sized>(len: usize, rng: &mut R) -> Result<Self> {
        let mut s = Self::zeros(len)?;
        s.words.iter_mut().for_each(|w| *w = rng.next_u64());
        s.clear_tail();
        Ok(s)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.words[i / WORD] >> (i % WORD) & 1 == 1)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn count_zeros(&self) -> usize {
        self.len - self.count_ones()
    }

    /// Length of the maximal all-ones prefix.
    pub fn leading_ones(&self) -> usize {
        let mut total = 0;
        for w in &self.words {
            let run = w.trailing_ones() as usize;
            total += run;
            if run < WORD {
                break;
            }
        }
        total.min(self.len)
    }

    /// Length of the maximal all-zeros suffix.
    pub fn trailing_zeros(&self) -> usize {
        let last_bits = match self.len % WORD {
            0 => WORD,
            r => r,
        };
        let mut total = 0;
        for (idx, &w) in self.words.iter().enumerate().rev() {
            let bits = if idx + 1 == self.words.len() {
                last_bits
            } else {
                WORD
            };
            // Shift the valid bits to the top so leading_zeros counts from the
            // highest valid position downwards.
            let run = if w == 0 {
                bits
            } else {
                (w << (WORD - bits)).leading_zeros() as usize
            };
            total += run;
            if run < bits {
                break;
            }
        }
        total
    }

    pub(crate) fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] ^= 1 << (i % WORD);
    }

    pub(crate) fn complement_in_place(&mut self) {
        self.words.iter_mut().for_each(|w| *w = !*w);
        self.clear_tail();
    }

    /// `head[0..k] ⧺ tail[k..len]`. Lengths must already agree.
    pub(crate) fn splice(head: &Self, tail: &Self, k: usize) -> Self {
        debug_assert_eq!(head.len, tail.len);
        debug_assert!(k <= head.len);
        let words = head
            .words
            .iter()
            .zip(&tail.words)
            .enumerate()
            .map(|(w, (&h, &t))| {
                let start = w * WORD;
                let m = if k <= start { 0 } else { low_mask(k - start) };
                (h & m) | (t & !m)
            })
            .collect();
        Self {
            len: head.len,
            words,
        }
    }

    fn clear_tail(&mut self) {
        let m = tail_mask(self.len);
        if let Some(last) = self.words.last_mut() {
            *last &= m;
        }
    }
}

impl fmt::Display for Bitstring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.iter().map(|b| if b { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for Bitstring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bitstring({self})")
    }
}

impl FromStr for Bitstring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!(
                    "unexpected character {other:?} in bitstring"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        if bits.is_empty() {
            return Err(Error::Parse("empty bitstring".into()));
        }
        Self::from_bits(&bits)
    }
}

impl Serialize for Bitstring {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Bitstring {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
