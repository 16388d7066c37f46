//! Compressibility and predictability tests.
//!
//! The universal test measures the spacing between repeated L-bit
//! blocks, which tracks the per-block entropy of the source. The
//! linear complexity test runs Berlekamp-Massey over fixed blocks and
//! scores the deviation of the shortest-register length from its
//! expectation. The serial and approximate entropy tests compare
//! overlapping pattern counts at adjacent widths, counting windows
//! cyclically so every position contributes at every width.

use crate::bits::BitSequence;
use crate::error::{Error, Result};
use crate::result::TestResult;
use crate::special::{erfc, igamc, Probability};
use crate::suite::id;

/// Expected value and variance of the compression statistic for block
/// sizes L = 6..=16, indexed by L - 6.
const UNIVERSAL_LAW: [(f64, f64); 11] = [
    (5.2177052, 2.954),
    (6.1962507, 3.125),
    (7.1836656, 3.238),
    (8.1764248, 3.311),
    (9.1723243, 3.356),
    (10.170032, 3.384),
    (11.168765, 3.401),
    (12.168070, 3.410),
    (13.167693, 3.416),
    (14.167488, 3.419),
    (15.167379, 3.421),
];

/// Class probabilities for the centered linear complexity statistic,
/// classes (-inf,-2.5], four unit-wide bins, [1.5,2.5], (2.5,inf).
const COMPLEXITY_PROBS: [f64; 7] = [0.01047, 0.03125, 0.125, 0.5, 0.25, 0.0625, 0.02078];

/// Test 9. Splits the sequence into L-bit blocks, uses the first
/// Q = 10 * 2^L as a dictionary warm-up, and averages log2 of the gap
/// back to the previous occurrence over the remaining K blocks.
///
/// `level` fixes L explicitly (6..=16); `None` picks the largest L
/// whose recommended minimum length 1010 * 2^L * L fits.
pub fn universal(seq: &BitSequence, level: Option<u32>) -> Result<TestResult> {
    let n = seq.len();
    let l = match level {
        Some(l) => {
            if !(6..=16).contains(&l) {
                return Err(Error::config(format!("block size {l} outside 6..=16")));
            }
            l
        }
        None => (6..=16u32)
            .filter(|&l| 1010u64 * (1u64 << l) * l as u64 <= n as u64)
            .next_back()
            .ok_or_else(|| {
                Error::domain(format!(
                    "sequence of {n} bits is shorter than the 387840 needed for the smallest block size"
                ))
            })?,
    };
    let q = 10usize << l;
    let blocks = n / l as usize;
    if blocks <= q {
        return Err(Error::domain(format!(
            "{blocks} blocks of {l} bits leave nothing after the {q}-block warm-up"
        )));
    }
    let k = blocks - q;

    // last[v] holds the 1-indexed block number of the latest occurrence
    // of pattern v, 0 when unseen.
    let mut last = vec![0usize; 1usize << l];
    for i in 1..=q {
        let v = seq.window((i - 1) * l as usize, l as usize) as usize;
        last[v] = i;
    }
    let mut sum = 0.0f64;
    for i in q + 1..=q + k {
        let v = seq.window((i - 1) * l as usize, l as usize) as usize;
        sum += ((i - last[v]) as f64).log2();
        last[v] = i;
    }
    let f_n = sum / k as f64;

    let (expected, variance) = UNIVERSAL_LAW[(l - 6) as usize];
    let lf = l as f64;
    let kf = k as f64;
    let c = 0.7 - 0.8 / lf + (4.0 + 32.0 / lf) * kf.powf(-3.0 / lf) / 15.0;
    let sigma = c * (variance / kf).sqrt();
    let p = Probability::new(erfc((f_n - expected).abs() / (std::f64::consts::SQRT_2 * sigma))?)?;

    let mut result = TestResult::new(id(9), vec![p])
        .with_stat("l", lf)
        .with_stat("q", q as f64)
        .with_stat("k", kf)
        .with_stat("f_n", f_n)
        .with_stat("expected", expected)
        .with_stat("sigma", sigma);
    if level.is_some() && (k as u64) < 1000 * (1u64 << l) {
        result = result.with_warning(format!(
            "only {k} scoring blocks; the reference law assumes at least {}",
            1000u64 << l
        ));
    }
    Ok(result)
}

/// Shortest linear feedback shift register generating `bits`, returned
/// as (length, taps). Tap bit j of the packed words is the coefficient
/// of x^j in the connection polynomial; bit 0 is always set.
///
/// The inner products run over whole words: the sequence is stored
/// reversed so the window s[i], s[i-1], .. lines up with ascending tap
/// bits, and each discrepancy is a popcount parity.
pub fn berlekamp_massey(bits: &[u8]) -> (usize, Vec<u64>) {
    let n = bits.len();
    let words = n / 64 + 2;
    let mut rev = vec![0u64; words];
    for (i, &b) in bits.iter().rev().enumerate() {
        if b != 0 {
            rev[i / 64] |= 1u64 << (i % 64);
        }
    }
    let mut c = vec![0u64; words];
    let mut b = vec![0u64; words];
    c[0] = 1;
    b[0] = 1;
    let mut l = 0usize;
    let mut shift = 1usize;
    for i in 0..n {
        // d = sum_{j=0..l} c_j s_{i-j}; rev bit (n-1-i+j) is s_{i-j}.
        let off = n - 1 - i;
        let (ow, ob) = (off / 64, off % 64);
        let mut acc = 0u64;
        for w in 0..l / 64 + 1 {
            let mut window = rev[ow + w] >> ob;
            if ob > 0 && ow + w + 1 < words {
                window |= rev[ow + w + 1] << (64 - ob);
            }
            acc ^= c[w] & window;
        }
        if acc.count_ones() % 2 == 1 {
            let prev = c.clone();
            let (sw, sb) = (shift / 64, shift % 64);
            for w in 0..words - sw {
                let mut v = b[w] << sb;
                if sb > 0 && w > 0 {
                    v |= b[w - 1] >> (64 - sb);
                }
                c[w + sw] ^= v;
            }
            if 2 * l <= i {
                l = i + 1 - l;
                b = prev;
                shift = 1;
            } else {
                shift += 1;
            }
        } else {
            shift += 1;
        }
    }
    c.truncate(l / 64 + 1);
    (l, c)
}

/// Test 10. Computes the linear complexity of each `block_len`-bit
/// block, centers it on the theoretical mean, and chi-squares the
/// seven-class histogram of the deviations.
pub fn linear_complexity(seq: &BitSequence, block_len: usize) -> Result<TestResult> {
    let n = seq.len();
    if !(500..=5000).contains(&block_len) {
        return Err(Error::config(format!(
            "block length {block_len} outside 500..=5000"
        )));
    }
    let blocks = n / block_len;
    if blocks == 0 {
        return Err(Error::domain(format!(
            "sequence of {n} bits shorter than one {block_len}-bit block"
        )));
    }
    let mf = block_len as f64;
    let sign = if block_len % 2 == 0 { 1.0 } else { -1.0 };
    let mu = mf / 2.0 + (9.0 - sign) / 36.0 - (mf / 3.0 + 2.0 / 9.0) / (2.0f64).powi(block_len as i32);
    let mut nu = [0u64; 7];
    let mut buf = vec![0u8; block_len];
    for j in 0..blocks {
        for (i, slot) in buf.iter_mut().enumerate() {
            *slot = seq.get(j * block_len + i);
        }
        let (l, _) = berlekamp_massey(&buf);
        let t = sign * (l as f64 - mu) + 2.0 / 9.0;
        let class = if t <= -2.5 {
            0
        } else if t <= -1.5 {
            1
        } else if t <= -0.5 {
            2
        } else if t <= 0.5 {
            3
        } else if t <= 1.5 {
            4
        } else if t <= 2.5 {
            5
        } else {
            6
        };
        nu[class] += 1;
    }
    let nf = blocks as f64;
    let mut chi2 = 0.0;
    for (count, pi) in nu.iter().zip(COMPLEXITY_PROBS) {
        let expect = nf * pi;
        chi2 += (*count as f64 - expect) * (*count as f64 - expect) / expect;
    }
    let p = Probability::new(igamc(3.0, chi2 / 2.0)?)?;
    let mut result = TestResult::new(id(10), vec![p])
        .with_stat("block_len", mf)
        .with_stat("n_blocks", nf)
        .with_stat("mu", mu)
        .with_stat("chi2", chi2);
    for (i, count) in nu.iter().enumerate() {
        result = result.with_stat(&format!("nu{i}"), *count as f64);
    }
    Ok(result)
}

/// Cyclic overlapping pattern counts at width `w`: the window wraps
/// past the end, so the counts total exactly n.
fn pattern_counts(seq: &BitSequence, w: u32) -> Vec<u32> {
    let n = seq.len();
    if w == 0 {
        return vec![n as u32];
    }
    let mask = (1u64 << w) - 1;
    let mut counts = vec![0u32; 1usize << w];
    let mut val = 0u64;
    for i in 0..n + w as usize - 1 {
        val = (val << 1 | seq.get(i % n) as u64) & mask;
        if i + 1 >= w as usize {
            counts[val as usize] += 1;
        }
    }
    counts
}

/// Merges width-w counts down to width w-1: each short pattern is the
/// prefix of exactly two long ones at the same cyclic position.
fn fold_counts(counts: &[u32]) -> Vec<u32> {
    counts.chunks(2).map(|pair| pair[0] + pair[1]).collect()
}

/// The chi-square-like statistic 2^w / n * sum(nu^2) - n, zero for
/// width zero by construction. The numerator 2^w sum(nu^2) - n^2 is a
/// non-negative integer, so it is formed exactly before the single
/// division; the naive float order loses enough to visibly distort
/// P-values near 1.
fn psi_sq(counts: &[u32], n: usize, w: u32) -> f64 {
    let sum: u128 = counts.iter().map(|&c| c as u128 * c as u128).sum();
    let num = (sum << w) - n as u128 * n as u128;
    num as f64 / n as f64
}

/// Test 11. Compares cyclic pattern frequencies at widths m, m-1 and
/// m-2 through first and second differences of the psi-square
/// statistic, yielding two P-values.
///
/// `width` fixes m explicitly (1..=24); `None` picks
/// min(16, floor(log2 n) - 2).
pub fn serial(seq: &BitSequence, width: Option<u32>) -> Result<TestResult> {
    let n = seq.len();
    if n < 8 {
        return Err(Error::domain(format!(
            "sequence of {n} bits cannot support any pattern width"
        )));
    }
    let limit = n.ilog2() - 2;
    let m = match width {
        Some(m) => {
            if !(1..=24).contains(&m) {
                return Err(Error::config(format!("pattern width {m} outside 1..=24")));
            }
            if m > limit {
                return Err(Error::domain(format!(
                    "pattern width {m} exceeds the limit {limit} for {n} bits"
                )));
            }
            m
        }
        None => limit.min(16),
    };

    let counts = pattern_counts(seq, m);
    let psi_m = psi_sq(&counts, n, m);
    let (psi_m1, psi_m2) = if m >= 2 {
        let folded = fold_counts(&counts);
        let psi_m1 = psi_sq(&folded, n, m - 1);
        let psi_m2 = if m >= 3 {
            psi_sq(&fold_counts(&folded), n, m - 2)
        } else {
            0.0
        };
        (psi_m1, psi_m2)
    } else {
        (0.0, 0.0)
    };
    // Both differences are non-negative in exact arithmetic; rounding
    // can leave a tiny negative residue.
    let del1 = (psi_m - psi_m1).max(0.0);
    let del2 = (psi_m - 2.0 * psi_m1 + psi_m2).max(0.0);
    let p1 = Probability::new(igamc((2.0f64).powi(m as i32 - 2), del1 / 2.0)?)?;
    let p2 = Probability::new(igamc((2.0f64).powi(m as i32 - 3), del2 / 2.0)?)?;
    Ok(TestResult::new(id(11), vec![p1, p2])
        .with_stat("m", m as f64)
        .with_stat("psi2_m", psi_m)
        .with_stat("psi2_m1", psi_m1)
        .with_stat("psi2_m2", psi_m2)
        .with_stat("del1", del1)
        .with_stat("del2", del2))
}

/// Test 12. Approximate entropy: the drop in log-likelihood of cyclic
/// pattern frequencies from width m to m+1, compared against the ln 2
/// reached by an ideal source.
pub fn approximate_entropy(seq: &BitSequence, m: u32) -> Result<TestResult> {
    let n = seq.len();
    if m as u64 + 1 >= 63 || (1u64 << (m + 1)) > n as u64 {
        return Err(Error::domain(format!(
            "pattern width {m} needs more than {n} bits"
        )));
    }
    let nf = n as f64;
    let phi = |counts: &[u32]| -> f64 {
        counts
            .iter()
            .filter(|&&c| c != 0)
            .map(|&c| {
                let f = c as f64 / nf;
                f * f.ln()
            })
            .sum()
    };
    let phi_m = phi(&pattern_counts(seq, m));
    let phi_m1 = phi(&pattern_counts(seq, m + 1));
    let apen = phi_m - phi_m1;
    let chi2 = (2.0 * nf * (std::f64::consts::LN_2 - apen)).max(0.0);
    let p = Probability::new(igamc((2.0f64).powi(m as i32 - 1), chi2 / 2.0)?)?;
    Ok(TestResult::new(id(12), vec![p])
        .with_stat("m", m as f64)
        .with_stat("phi_m", phi_m)
        .with_stat("phi_m1", phi_m1)
        .with_stat("apen", apen)
        .with_stat("chi2", chi2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::BitBuilder;
    use crate::generators::GeneratorSpec;
    use crate::suite::monobit;
    use proptest::prelude::*;

    fn knuth(n: usize) -> BitSequence {
        GeneratorSpec::Knuth { seed: 1, bits_per_word: 32 }
            .generate(n)
            .unwrap()
    }

    fn assert_rel(got: f64, want: f64, tol: f64) {
        let err = (got - want).abs() / want.abs().max(1e-300);
        assert!(err <= tol, "got {got}, want {want}, rel err {err}");
    }

    fn tap_bit(taps: &[u64], j: usize) -> u8 {
        (taps[j / 64] >> (j % 64) & 1) as u8
    }

    /// True when the register (l, taps) reproduces bits[l..] from each
    /// preceding window.
    fn register_generates(bits: &[u8], l: usize, taps: &[u64]) -> bool {
        (l..bits.len()).all(|i| {
            let parity: u8 = (0..=l).map(|j| tap_bit(taps, j) & bits[i - j]).sum::<u8>() & 1;
            parity == 0
        })
    }

    #[test]
    fn universal_frozen_values() {
        let r = universal(&knuth(9840), Some(6)).unwrap();
        assert_eq!(r.statistics["q"], 640.0);
        assert_eq!(r.statistics["k"], 1000.0);
        assert_rel(r.statistics["f_n"], 5.2182534405720356, 1e-12);
        assert_rel(r.statistics["sigma"], 0.03186816340830408, 1e-12);
        assert_rel(r.p_values[0].value(), 0.9862743545485896, 1e-10);
        assert!(r.warning.is_some());

        let r = universal(&knuth(387840), None).unwrap();
        assert_eq!(r.statistics["l"], 6.0);
        assert_eq!(r.statistics["k"], 64000.0);
        assert_rel(r.statistics["f_n"], 5.214836325249598, 1e-12);
        assert_rel(r.p_values[0].value(), 0.45810407061307634, 1e-10);
        assert!(r.warning.is_none());
    }

    #[test]
    fn universal_block_size_selection_and_gates() {
        assert!(universal(&knuth(387839), None).is_err());
        assert!(universal(&knuth(10000), Some(5)).is_err());
        assert!(universal(&knuth(10000), Some(17)).is_err());
        // 640 blocks of 6 bits fill the warm-up exactly; one more block
        // is the smallest workable input.
        assert!(universal(&knuth(3840), Some(6)).is_err());
        let r = universal(&knuth(3846), Some(6)).unwrap();
        assert_eq!(r.statistics["k"], 1.0);
    }

    #[test]
    fn universal_constant_input_scores_zero() {
        // Every block repeats immediately, so every gap is 1 and the
        // average of log2(1) vanishes.
        let zeros = BitSequence::from_bytes(&[0u8; 1230], 9840).unwrap();
        let r = universal(&zeros, Some(6)).unwrap();
        assert_eq!(r.statistics["f_n"], 0.0);
        assert!(r.p_values[0].value() < 1e-300);
    }

    #[test]
    fn shortest_register_small_cases() {
        assert_eq!(berlekamp_massey(&[]).0, 0);
        assert_eq!(berlekamp_massey(&[0, 0, 0, 0]).0, 0);
        assert_eq!(berlekamp_massey(&[1]).0, 1);
        // k-1 zeros then a one force a k-bit register.
        assert_eq!(berlekamp_massey(&[0, 0, 0, 1]).0, 4);
        // A constant run satisfies s_i = s_{i-1}.
        assert_eq!(berlekamp_massey(&[1; 40]).0, 1);
        // An alternating run satisfies s_i = s_{i-2}.
        let alt: Vec<u8> = (0..40).map(|i| (i % 2) as u8).collect();
        let (l, taps) = berlekamp_massey(&alt);
        assert_eq!(l, 2);
        assert_eq!(taps[0], 0b101);
    }

    #[test]
    fn shortest_register_crosses_word_boundaries() {
        // 100 zeros then a one need a 101-bit register, so the taps
        // span more than one word.
        let mut bits = vec![0u8; 100];
        bits.push(1);
        bits.extend_from_slice(&[0, 1, 1, 0, 1, 0, 0, 1]);
        let (l, taps) = berlekamp_massey(&bits);
        assert!(l >= 101);
        assert!(register_generates(&bits, l, &taps));
    }

    #[test]
    fn linear_complexity_frozen_values() {
        let seq = knuth(5000);
        let first: Vec<u8> = (0..500).map(|i| seq.get(i)).collect();
        assert_eq!(berlekamp_massey(&first).0, 250);

        let r = linear_complexity(&seq, 500).unwrap();
        assert_eq!(r.statistics["n_blocks"], 10.0);
        assert_rel(r.statistics["mu"], 250.22222222222223, 1e-12);
        let nu: Vec<f64> = (0..7).map(|i| r.statistics[&format!("nu{i}")]).collect();
        assert_eq!(nu, vec![0.0, 1.0, 2.0, 6.0, 1.0, 0.0, 0.0]);
        assert_rel(r.statistics["chi2"], 4.0, 1e-9);
        assert_rel(r.p_values[0].value(), 0.6766764161830635, 1e-10);
    }

    #[test]
    fn linear_complexity_gates() {
        assert!(linear_complexity(&knuth(5000), 499).is_err());
        assert!(linear_complexity(&knuth(5000), 5001).is_err());
        assert!(linear_complexity(&knuth(499), 500).is_err());
        // A constant block sits far below the mean, filling class 0.
        let ones = BitSequence::from_ascii(&"1".repeat(500)).unwrap();
        let r = linear_complexity(&ones, 500).unwrap();
        assert_eq!(r.statistics["nu0"], 1.0);
    }

    #[test]
    fn serial_frozen_values() {
        let r = serial(&knuth(1000), Some(3)).unwrap();
        assert_eq!(r.p_values.len(), 2);
        assert_rel(r.statistics["psi2_m"], 3.312000000000012, 1e-9);
        assert_rel(r.statistics["del1"], 1.2559999999999718, 1e-9);
        assert_rel(r.statistics["del2"], 0.09999999999990905, 1e-6);
        assert_rel(r.p_values[0].value(), 0.8687953062188735, 1e-9);
        assert_rel(r.p_values[1].value(), 0.9512294245007573, 1e-9);

        // Width 1 reduces the first P-value to the monobit statistic.
        let r = serial(&knuth(1000), Some(1)).unwrap();
        assert_rel(r.p_values[0].value(), 0.3427817111479175, 1e-10);
        assert_rel(r.p_values[1].value(), 0.16851840570853305, 1e-10);
    }

    #[test]
    fn serial_width_selection_and_gates() {
        let r = serial(&knuth(1000), None).unwrap();
        assert_eq!(r.statistics["m"], 7.0);
        let r = serial(&knuth(1 << 20), None).unwrap();
        assert_eq!(r.statistics["m"], 16.0);

        assert!(serial(&knuth(1000), Some(8)).is_err());
        assert!(serial(&knuth(1000), Some(0)).is_err());
        assert!(serial(&knuth(1000), Some(25)).is_err());
        assert!(serial(&knuth(7), None).is_err());
    }

    #[test]
    fn serial_rejects_periodic_input() {
        // Alternating bits concentrate all the mass on two patterns,
        // blowing up both differences.
        let mut b = BitBuilder::new();
        for i in 0..4096 {
            b.push_bit((i % 2) as u8);
        }
        let r = serial(&b.finish().unwrap(), Some(10)).unwrap();
        assert_eq!(r.p_values[0].value(), 0.0);
        assert_eq!(r.p_values[1].value(), 0.0);
    }

    #[test]
    fn approximate_entropy_frozen_values() {
        let r = approximate_entropy(&knuth(1000), 2).unwrap();
        assert_rel(r.statistics["apen"], 0.6924850805272931, 1e-12);
        assert_rel(r.statistics["chi2"], 1.3242000653044261, 1e-9);
        assert_rel(r.p_values[0].value(), 0.8572564617408044, 1e-10);

        let r = approximate_entropy(&knuth(100), 2).unwrap();
        assert_rel(r.p_values[0].value(), 0.7164791877468951, 1e-10);
    }

    #[test]
    fn approximate_entropy_degenerate_inputs() {
        let mut b = BitBuilder::new();
        for i in 0..100 {
            b.push_bit((i % 2) as u8);
        }
        let r = approximate_entropy(&b.finish().unwrap(), 2).unwrap();
        assert_rel(r.p_values[0].value(), 5.546853213601198e-29, 1e-8);

        // A constant sequence has zero entropy drop at every width.
        let ones = BitSequence::from_ascii(&"1".repeat(100)).unwrap();
        let r = approximate_entropy(&ones, 2).unwrap();
        assert!(r.statistics["apen"].abs() < 1e-12);
        assert!(r.p_values[0].value() < 1e-12);

        assert!(approximate_entropy(&knuth(7), 2).is_err());
    }

    proptest! {
        #[test]
        fn register_reproduces_its_input(bits in proptest::collection::vec(0u8..2, 0..200)) {
            let (l, taps) = berlekamp_massey(&bits);
            prop_assert!(l <= bits.len());
            prop_assert_eq!(tap_bit(&taps, 0), 1);
            prop_assert!(register_generates(&bits, l, &taps));
        }

        #[test]
        fn register_length_grows_with_prefix(
            bits in proptest::collection::vec(0u8..2, 1..150),
            cut in 0usize..150,
        ) {
            let cut = cut.min(bits.len());
            let (short, _) = berlekamp_massey(&bits[..cut]);
            let (full, _) = berlekamp_massey(&bits);
            prop_assert!(short <= full);
        }

        #[test]
        fn serial_width_one_matches_monobit(seed in any::<u64>(), n in 100usize..400) {
            let seq = GeneratorSpec::Knuth { seed, bits_per_word: 32 }.generate(n).unwrap();
            let s = serial(&seq, Some(1)).unwrap();
            let m = monobit(&seq).unwrap();
            let err = (s.p_values[0].value() - m.p_values[0].value()).abs();
            prop_assert!(err < 1e-9 * m.p_values[0].value().max(1e-12));
        }

        #[test]
        fn psi_differences_are_non_negative(seed in any::<u64>(), m in 1u32..5, n in 64usize..512) {
            let seq = GeneratorSpec::Knuth { seed, bits_per_word: 32 }.generate(n).unwrap();
            let r = serial(&seq, Some(m)).unwrap();
            prop_assert!(r.statistics["del1"] >= 0.0);
            prop_assert!(r.statistics["del2"] >= 0.0);
            prop_assert!(r.statistics["psi2_m"] >= -1e-9);
        }

        #[test]
        fn entropy_drop_never_exceeds_ln2(seed in any::<u64>(), m in 1u32..4, n in 64usize..512) {
            let seq = GeneratorSpec::Knuth { seed, bits_per_word: 32 }.generate(n).unwrap();
            let r = approximate_entropy(&seq, m).unwrap();
            prop_assert!(r.statistics["apen"] <= std::f64::consts::LN_2 + 1e-12);
            prop_assert!(r.statistics["chi2"] >= 0.0);
        }
    }
}
