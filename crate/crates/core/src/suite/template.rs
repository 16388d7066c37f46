//! Template-matching tests, non-overlapping and overlapping.
//!
//! Test 7 counts disjoint occurrences of an arbitrary short pattern in
//! each of a fixed number of blocks; on a match the scan window jumps
//! past the matched bits. Test 8 counts overlapping runs of ones in
//! 1032-bit blocks, the window always advancing one position, and
//! scores the per-block counts against the occurrence-count
//! distribution.

use crate::bits::BitSequence;
use crate::error::{Error, Result};
use crate::result::TestResult;
use crate::special::{igamc, Probability};
use crate::suite::id;

/// Block length for the overlapping test.
const OVERLAP_BLOCK: usize = 1032;

/// Historical class probabilities for the overlapping test at
/// lambda = 2. Kept selectable for comparison runs; the default path
/// computes the exact distribution instead.
const OVERLAP_LEGACY_PI: [f64; 6] = [0.324652, 0.182617, 0.142670, 0.106645, 0.077147, 0.166269];

/// Search pattern for the non-overlapping test, 1 to 16 bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Template {
    bits: Vec<u8>,
}

impl Template {
    /// Parses a pattern from '0'/'1' characters.
    pub fn from_ascii(text: &str) -> Result<Self> {
        let seq = BitSequence::from_ascii(text)?;
        let bits: Vec<u8> = seq.iter().collect();
        if bits.is_empty() || bits.len() > 16 {
            return Err(Error::config(format!(
                "template length {} outside 1..=16",
                bits.len()
            )));
        }
        Ok(Template { bits })
    }

    /// The standard nine-bit pattern "000000001".
    pub fn default_nine() -> Self {
        Template { bits: vec![0, 0, 0, 0, 0, 0, 0, 0, 1] }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// True when no proper prefix of the pattern equals its suffix, so
    /// shifted copies of the pattern cannot overlap themselves.
    pub fn is_aperiodic(&self) -> bool {
        let m = self.bits.len();
        (1..m).all(|d| self.bits[..m - d] != self.bits[d..])
    }

    /// The pattern packed into a word, first bit most significant.
    fn as_word(&self) -> u64 {
        self.bits.iter().fold(0u64, |acc, &b| acc << 1 | b as u64)
    }
}

impl std::fmt::Display for Template {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// Non-overlapping occurrence count in `seq[start .. start+len]`: the
/// scan advances one bit at a time and jumps the full pattern length
/// on every match.
fn disjoint_matches(seq: &BitSequence, start: usize, len: usize, tpl: u64, m: usize) -> u64 {
    let mut count = 0;
    let mut i = start;
    let end = start + len;
    while i + m <= end {
        if seq.window(i, m) == tpl {
            count += 1;
            i += m;
        } else {
            i += 1;
        }
    }
    count
}

/// Non-overlapping occurrence count of `tpl` over the whole sequence.
pub fn disjoint_match_count(seq: &BitSequence, tpl: &Template) -> u64 {
    disjoint_matches(seq, 0, seq.len(), tpl.as_word(), tpl.len())
}

/// Overlapping occurrence count of `tpl` over the whole sequence: the
/// scan advances one bit at a time regardless of matches.
pub fn overlapping_match_count(seq: &BitSequence, tpl: &Template) -> u64 {
    let m = tpl.len();
    let word = tpl.as_word();
    if m == 0 || m > seq.len() {
        return 0;
    }
    (0..=seq.len() - m)
        .filter(|&i| seq.window(i, m) == word)
        .count() as u64
}

/// Test 7. Splits the sequence into `blocks` blocks of M = n/blocks
/// bits, counts disjoint template occurrences per block, and scores
/// the counts against the theoretical mean (M-m+1)/2^m and variance
/// M(2^-m - (2m-1) 2^-2m).
pub fn non_overlapping_template(
    seq: &BitSequence,
    tpl: &Template,
    blocks: usize,
) -> Result<TestResult> {
    let n = seq.len();
    let m = tpl.len();
    if blocks == 0 {
        return Err(Error::config("block count must be positive"));
    }
    let block_len = n / blocks;
    if m >= block_len {
        return Err(Error::domain(format!(
            "template of {m} bits does not fit a {block_len}-bit block"
        )));
    }
    let mf = m as f64;
    let mlf = block_len as f64;
    let mean = (mlf - mf + 1.0) / (2.0f64).powi(m as i32);
    let variance = mlf * ((2.0f64).powi(-(m as i32)) - (2.0 * mf - 1.0) * (2.0f64).powi(-2 * m as i32));
    let word = tpl.as_word();
    let mut chi2 = 0.0;
    for j in 0..blocks {
        let w = disjoint_matches(seq, j * block_len, block_len, word, m) as f64;
        chi2 += (w - mean) * (w - mean) / variance;
    }
    let p = Probability::new(igamc(blocks as f64 / 2.0, chi2 / 2.0)?)?;
    let mut result = TestResult::new(id(7), vec![p])
        .with_stat("m", mf)
        .with_stat("block_len", mlf)
        .with_stat("mean", mean)
        .with_stat("variance", variance)
        .with_stat("chi2", chi2);
    if !tpl.is_aperiodic() {
        result = result.with_warning(
            "template is periodic; the mean/variance law assumes an aperiodic pattern",
        );
    }
    Ok(result)
}

/// Exact distribution of the overlapping count of `m` consecutive ones
/// in a `block_len`-bit uniform block, pooled into classes 0..=4 and
/// "5 or more".
pub fn overlap_probs(block_len: usize, m: usize) -> [f64; 6] {
    // State (trailing ones capped at m, occurrences capped at 5); a
    // one-bit from m-1 or m trailing ones completes another occurrence.
    let width = m + 1;
    let mut cur = vec![0.0f64; width * 6];
    let mut next = vec![0.0f64; width * 6];
    cur[0] = 1.0;
    for _ in 0..block_len {
        next.iter_mut().for_each(|x| *x = 0.0);
        for t in 0..width {
            for c in 0..6 {
                let p = cur[t * 6 + c];
                if p == 0.0 {
                    continue;
                }
                next[c] += 0.5 * p;
                let t2 = (t + 1).min(m);
                let c2 = if t2 == m { (c + 1).min(5) } else { c };
                next[t2 * 6 + c2] += 0.5 * p;
            }
        }
        std::mem::swap(&mut cur, &mut next);
    }
    let mut out = [0.0f64; 6];
    for t in 0..width {
        for (c, slot) in out.iter_mut().enumerate() {
            *slot += cur[t * 6 + c];
        }
    }
    out
}

/// Test 8. Counts overlapping runs of `m` ones per 1032-bit block and
/// chi-squares the pooled class counts. `legacy_pi` scores against the
/// historical table instead of the exact distribution and is only
/// defined for the nine-ones pattern.
pub fn overlapping_template(seq: &BitSequence, m: usize, legacy_pi: bool) -> Result<TestResult> {
    let n = seq.len();
    if !(1..=16).contains(&m) {
        return Err(Error::config(format!("pattern length {m} outside 1..=16")));
    }
    if legacy_pi && m != 9 {
        return Err(Error::config(
            "the historical class table is only valid for the nine-ones pattern",
        ));
    }
    let blocks = n / OVERLAP_BLOCK;
    if blocks == 0 {
        return Err(Error::domain(format!(
            "sequence of {n} bits shorter than one {OVERLAP_BLOCK}-bit block"
        )));
    }
    let pi: [f64; 6] = if legacy_pi {
        OVERLAP_LEGACY_PI
    } else {
        overlap_probs(OVERLAP_BLOCK, m)
    };
    let all_ones = (1u64 << m) - 1;
    let mut nu = [0u64; 6];
    for j in 0..blocks {
        let start = j * OVERLAP_BLOCK;
        let mut count = 0usize;
        for i in 0..=(OVERLAP_BLOCK - m) {
            if seq.window(start + i, m) == all_ones {
                count += 1;
            }
        }
        nu[count.min(5)] += 1;
    }
    let nf = blocks as f64;
    let mut chi2 = 0.0;
    for (count, p) in nu.iter().zip(pi) {
        let expect = nf * p;
        chi2 += (*count as f64 - expect) * (*count as f64 - expect) / expect;
    }
    let lambda = (OVERLAP_BLOCK - m + 1) as f64 / (2.0f64).powi(m as i32);
    let p = Probability::new(igamc(2.5, chi2 / 2.0)?)?;
    let mut result = TestResult::new(id(8), vec![p])
        .with_stat("n_blocks", nf)
        .with_stat("lambda", lambda)
        .with_stat("eta", lambda / 2.0)
        .with_stat("chi2", chi2);
    for (i, count) in nu.iter().enumerate() {
        result = result.with_stat(&format!("nu{i}"), *count as f64);
    }
    Ok(result)
}
