//! Frequency-family tests: monobit, block frequency, runs, and longest
//! run of ones.
//!
//! These four tests look at raw bit counts. Monobit checks the global
//! ones/zeros balance, block frequency localizes that balance, runs
//! counts oscillation speed, and longest-run compares the maximal
//! 1-run per block against its exact distribution.

use std::f64::consts::SQRT_2;

use crate::bits::BitSequence;
use crate::error::{Error, Result};
use crate::result::TestResult;
use crate::special::{erfc, igamc, Probability};
use crate::suite::id;

/// Test 1. S_obs = |#ones - #zeros| / sqrt(n), P = erfc(S_obs / sqrt(2)).
pub fn monobit(seq: &BitSequence) -> Result<TestResult> {
    let n = seq.len();
    if n == 0 {
        return Err(Error::domain("monobit needs a nonempty sequence"));
    }
    let s_n = 2 * seq.ones() as i64 - n as i64;
    let s_obs = s_n.abs() as f64 / (n as f64).sqrt();
    let p = Probability::new(erfc(s_obs / SQRT_2)?)?;
    let mut result = TestResult::new(id(1), vec![p])
        .with_stat("s_n", s_n as f64)
        .with_stat("s_obs", s_obs);
    if n < 100 {
        result = result.with_warning("sequence shorter than the recommended 100 bits");
    }
    Ok(result)
}

/// Test 2. Per-block ones fractions against 1/2, chi-square with
/// N = n/M classes. `m` of `None` selects 128 for n >= 9000 and
/// max(20, n/10) below that; a trailing partial block is discarded.
pub fn block_frequency(seq: &BitSequence, m: Option<usize>) -> Result<TestResult> {
    let n = seq.len();
    let m = match m {
        Some(m) => m,
        None if n >= 9000 => 128,
        None => (n / 10).max(20),
    };
    if m == 0 || m > n {
        return Err(Error::domain(format!(
            "block length {m} outside 1..={n}"
        )));
    }
    let blocks = n / m;
    let mut chi2 = 0.0;
    for j in 0..blocks {
        let ones = count_ones(seq, j * m, m);
        let pi = ones as f64 / m as f64;
        chi2 += (pi - 0.5) * (pi - 0.5);
    }
    chi2 *= 4.0 * m as f64;
    let p = Probability::new(igamc(blocks as f64 / 2.0, chi2 / 2.0)?)?;
    Ok(TestResult::new(id(2), vec![p])
        .with_stat("m", m as f64)
        .with_stat("n_blocks", blocks as f64)
        .with_stat("chi2", chi2))
}

/// Test 3. Counts maximal same-bit runs. Gated on the monobit
/// prerequisite: when the ones fraction strays from 1/2 by 2/sqrt(n)
/// or more, the result is a certified failure instead of a P-value.
pub fn runs(seq: &BitSequence) -> Result<TestResult> {
    let n = seq.len();
    if n < 2 {
        return Err(Error::domain("runs needs at least 2 bits"));
    }
    let pi = seq.ones() as f64 / n as f64;
    let tau = 2.0 / (n as f64).sqrt();
    if (pi - 0.5).abs() >= tau {
        return Ok(TestResult::inapplicable(id(3), "prerequisite frequency failure")
            .with_stat("pi", pi));
    }
    let mut v_obs = 1u64;
    let mut prev = seq.get(0);
    for i in 1..n {
        let b = seq.get(i);
        v_obs += (b != prev) as u64;
        prev = b;
    }
    let nf = n as f64;
    let x = (v_obs as f64 - 2.0 * nf * pi * (1.0 - pi)).abs()
        / (2.0 * (2.0 * nf).sqrt() * pi * (1.0 - pi));
    let p = Probability::new(erfc(x)?)?;
    Ok(TestResult::new(id(3), vec![p])
        .with_stat("pi", pi)
        .with_stat("v_obs", v_obs as f64))
}

/// Block length, class layout, and class probabilities for the
/// longest-run test. Valid block lengths are 8, 128, 512, 1000, and
/// 10000 bits; each fixes the number of chi-square classes and the
/// class boundaries.
#[derive(Debug, Clone)]
pub struct LongestRunConfig {
    /// Bits per block (M).
    pub block_len: usize,
    /// Degrees of freedom (K); there are K + 1 classes.
    pub dof: usize,
    /// Number of blocks the sequence yields (N).
    pub blocks: usize,
    /// Longest-run value of the lowest class; runs at or below it are
    /// pooled there, runs at or above `lo + dof` pool into the top.
    pub lo: usize,
    /// Probability of each class under uniform bits, exact for the
    /// block length.
    pub pi: Vec<f64>,
}

impl LongestRunConfig {
    /// Standard configuration for a sequence of `n` bits.
    pub fn auto(n: usize) -> Result<Self> {
        let m = if n >= 750_000 {
            10_000
        } else if n >= 6272 {
            128
        } else if n >= 128 {
            8
        } else {
            return Err(Error::domain("longest-run needs at least 128 bits"));
        };
        Self::with_block_len(m, n)
    }

    /// Configuration for an explicit block length.
    pub fn with_block_len(m: usize, n: usize) -> Result<Self> {
        let (dof, lo) = match m {
            8 => (3, 1),
            128 => (5, 4),
            512 => (5, 6),
            1000 => (5, 7),
            10_000 => (6, 10),
            _ => {
                return Err(Error::config(format!(
                    "longest-run block length {m} not one of 8/128/512/1000/10000"
                )))
            }
        };
        if n < m {
            return Err(Error::domain(format!(
                "sequence of {n} bits shorter than one {m}-bit block"
            )));
        }
        Ok(LongestRunConfig {
            block_len: m,
            dof,
            blocks: n / m,
            lo,
            pi: run_class_probs(m, lo, lo + dof),
        })
    }
}

/// Exact distribution of the clamped longest 1-run in an `m`-bit block
/// of uniform bits, one probability per class `lo..=hi`.
fn run_class_probs(m: usize, lo: usize, hi: usize) -> Vec<f64> {
    // State (current trailing run r, longest so far l), both capped at
    // hi since larger values cannot change the class.
    let width = hi + 1;
    let mut cur = vec![0.0f64; width * width];
    let mut next = vec![0.0f64; width * width];
    cur[0] = 1.0;
    for _ in 0..m {
        next.iter_mut().for_each(|x| *x = 0.0);
        for r in 0..width {
            for l in r..width {
                let p = cur[r * width + l];
                if p == 0.0 {
                    continue;
                }
                next[l] += 0.5 * p;
                let r2 = (r + 1).min(hi);
                let l2 = l.max(r2);
                next[r2 * width + l2] += 0.5 * p;
            }
        }
        std::mem::swap(&mut cur, &mut next);
    }
    let mut out = vec![0.0f64; hi - lo + 1];
    for r in 0..width {
        for l in r..width {
            let p = cur[r * width + l];
            if p != 0.0 {
                out[l.clamp(lo, hi) - lo] += p;
            }
        }
    }
    out
}

/// Test 4 with the standard block length for the sequence's size.
pub fn longest_run(seq: &BitSequence) -> Result<TestResult> {
    let cfg = LongestRunConfig::auto(seq.len())?;
    longest_run_with(seq, &cfg)
}

/// Test 4 against an explicit configuration.
pub fn longest_run_with(seq: &BitSequence, cfg: &LongestRunConfig) -> Result<TestResult> {
    let m = cfg.block_len;
    let hi = cfg.lo + cfg.dof;
    let mut nu = vec![0u64; cfg.dof + 1];
    for j in 0..cfg.blocks {
        let mut longest = 0usize;
        let mut run = 0usize;
        for i in j * m..(j + 1) * m {
            if seq.get(i) == 1 {
                run += 1;
                longest = longest.max(run);
            } else {
                run = 0;
            }
        }
        nu[longest.clamp(cfg.lo, hi) - cfg.lo] += 1;
    }
    let nf = cfg.blocks as f64;
    let mut chi2 = 0.0;
    for (count, pi) in nu.iter().zip(&cfg.pi) {
        let expect = nf * pi;
        chi2 += (*count as f64 - expect) * (*count as f64 - expect) / expect;
    }
    let p = Probability::new(igamc(cfg.dof as f64 / 2.0, chi2 / 2.0)?)?;
    let mut result = TestResult::new(id(4), vec![p])
        .with_stat("m", m as f64)
        .with_stat("n_blocks", nf)
        .with_stat("chi2", chi2);
    for (i, count) in nu.iter().enumerate() {
        result = result.with_stat(&format!("nu{i}"), *count as f64);
    }
    Ok(result)
}

fn count_ones(seq: &BitSequence, start: usize, len: usize) -> u64 {
    let mut ones = 0u64;
    let mut i = start;
    let end = start + len;
    while i + 63 <= end {
        ones += seq.window(i, 63).count_ones() as u64;
        i += 63;
    }
    while i < end {
        ones += seq.get(i) as u64;
        i += 1;
    }
    ones
}
