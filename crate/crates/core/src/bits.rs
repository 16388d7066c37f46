//! Packed bit sequences.
//!
//! `BitSequence` stores bits MSB-first inside `u64` words: bit `i` lives
//! in word `i / 64` at position `63 - i % 64`. That layout makes byte
//! round-trips and fixed-width window reads cheap, which is what the
//! test battery leans on. Unused bits of the last word are always zero.

use crate::error::{Error, Result};

/// Hard cap on sequence length, 2^31 bits.
pub const MAX_BITS: usize = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitSequence {
    words: Vec<u64>,
    n: usize,
}

impl BitSequence {
    /// Parses ASCII `0`/`1` text. Whitespace is skipped; any other
    /// character aborts with its byte offset.
    pub fn from_ascii(text: &str) -> Result<Self> {
        let mut b = BitBuilder::new();
        for (offset, ch) in text.char_indices() {
            match ch {
                '0' => b.push_bit(0),
                '1' => b.push_bit(1),
                c if c.is_whitespace() => continue,
                c => return Err(Error::BadChar { offset, found: c }),
            }
        }
        b.finish()
    }

    /// Takes the first `n` bits of `bytes`, reading each byte MSB-first.
    pub fn from_bytes(bytes: &[u8], n: usize) -> Result<Self> {
        if n > bytes.len() * 8 {
            return Err(Error::length(format!(
                "{n} bits requested from {} bytes",
                bytes.len()
            )));
        }
        check_len(n)?;
        let mut words = Vec::with_capacity(n.div_ceil(64));
        for chunk in bytes[..n.div_ceil(8)].chunks(8) {
            let mut raw = [0u8; 8];
            raw[..chunk.len()].copy_from_slice(chunk);
            words.push(u64::from_be_bytes(raw));
        }
        let mut seq = BitSequence { words, n };
        seq.mask_tail();
        Ok(seq)
    }

    /// Serializes back to bytes, MSB-first, final byte zero-padded.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.n.div_ceil(8));
        for w in &self.words {
            out.extend_from_slice(&w.to_be_bytes());
        }
        out.truncate(self.n.div_ceil(8));
        out
    }

    /// The sequence mapped to +1/-1 steps (bit 1 -> +1, bit 0 -> -1).
    pub fn to_signed(&self) -> Vec<i8> {
        (0..self.n).map(|i| if self.get(i) == 1 { 1 } else { -1 }).collect()
    }

    /// A copy of the first `n` bits.
    pub fn prefix(&self, n: usize) -> Result<Self> {
        if n > self.n {
            return Err(Error::length(format!(
                "prefix of {n} bits from a {}-bit sequence",
                self.n
            )));
        }
        let mut seq = BitSequence {
            words: self.words[..n.div_ceil(64)].to_vec(),
            n,
        };
        seq.mask_tail();
        Ok(seq)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Bit `i` as 0 or 1. Panics when out of range.
    #[inline]
    pub fn get(&self, i: usize) -> u8 {
        debug_assert!(i < self.n);
        ((self.words[i >> 6] >> (63 - (i & 63))) & 1) as u8
    }

    /// Bits `i .. i + width` as an integer, first bit most significant.
    /// Requires `width <= 63` and the window fully inside the sequence.
    #[inline]
    pub fn window(&self, i: usize, width: usize) -> u64 {
        debug_assert!(width >= 1 && width <= 63);
        debug_assert!(i + width <= self.n);
        let word = i >> 6;
        let offset = i & 63;
        let joined = if offset + width <= 64 {
            self.words[word] << offset
        } else {
            (self.words[word] << offset) | (self.words[word + 1] >> (64 - offset))
        };
        joined >> (64 - width)
    }

    /// Number of one bits.
    pub fn ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.n).map(move |i| self.get(i))
    }

    fn mask_tail(&mut self) {
        let tail = self.n & 63;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= u64::MAX << (64 - tail);
            }
        }
        debug_assert_eq!(self.words.len(), self.n.div_ceil(64));
    }
}

fn check_len(n: usize) -> Result<()> {
    if n > MAX_BITS {
        return Err(Error::length(format!("{n} bits exceeds the {MAX_BITS}-bit cap")));
    }
    Ok(())
}

/// Incremental builder used by parsers and generators.
#[derive(Debug, Default)]
pub struct BitBuilder {
    words: Vec<u64>,
    n: usize,
}

impl BitBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bits: usize) -> Self {
        BitBuilder {
            words: Vec::with_capacity(bits.div_ceil(64)),
            n: 0,
        }
    }

    #[inline]
    pub fn push_bit(&mut self, bit: u8) {
        debug_assert!(bit <= 1);
        let pos = self.n & 63;
        if pos == 0 {
            self.words.push(0);
        }
        if bit == 1 {
            *self.words.last_mut().unwrap() |= 1u64 << (63 - pos);
        }
        self.n += 1;
    }

    /// Appends the low `width` bits of `value`, most significant first.
    pub fn push_bits(&mut self, value: u64, width: usize) {
        debug_assert!(width >= 1 && width <= 64);
        for shift in (0..width).rev() {
            self.push_bit(((value >> shift) & 1) as u8);
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn finish(self) -> Result<BitSequence> {
        check_len(self.n)?;
        Ok(BitSequence {
            words: self.words,
            n: self.n,
        })
    }
}
