//! Repetitive-pattern tests: binary matrix rank and the discrete
//! Fourier transform spectral test.
//!
//! The rank test carves the sequence into 32x32 bit matrices and
//! compares the full-rank / rank-31 / lower class counts against their
//! asymptotic probabilities. The spectral test looks for periodic
//! features as an excess of large-magnitude Fourier components.

use std::f64::consts::SQRT_2;

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::bits::BitSequence;
use crate::error::{Error, Result};
use crate::result::TestResult;
use crate::special::{erfc, igamc, Probability};
use crate::suite::id;

/// Probabilities of rank 32, 31, and at most 30 for a random 32x32
/// matrix over GF(2).
const RANK_PROBS: [f64; 3] = [0.2888, 0.5776, 0.1336];

const MATRIX_DIM: usize = 32;
const MATRIX_BITS: usize = MATRIX_DIM * MATRIX_DIM;

/// Rank of a bit matrix over GF(2). Each row is packed into a word,
/// column `j` at bit `j`; `cols` must be at most 64.
pub fn gf2_rank(rows: &[u64], cols: usize) -> usize {
    assert!(cols <= 64, "row words hold at most 64 columns");
    let mut rows = rows.to_vec();
    let mut rank = 0;
    for col in (0..cols).rev() {
        let Some(pivot) = (rank..rows.len()).find(|&i| rows[i] >> col & 1 == 1) else {
            continue;
        };
        rows.swap(rank, pivot);
        let lead = rows[rank];
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && *row >> col & 1 == 1 {
                *row ^= lead;
            }
        }
        rank += 1;
    }
    rank
}

/// Test 5. Ranks of consecutive row-major 32x32 matrices, three
/// classes, P = igamc(1, chi2/2) = exp(-chi2/2).
pub fn matrix_rank(seq: &BitSequence) -> Result<TestResult> {
    let n = seq.len();
    let blocks = n / MATRIX_BITS;
    if blocks < 38 {
        return Err(Error::domain(format!(
            "matrix-rank needs at least 38912 bits, got {n}"
        )));
    }
    let mut counts = [0u64; 3];
    for k in 0..blocks {
        let base = k * MATRIX_BITS;
        let rows: Vec<u64> = (0..MATRIX_DIM)
            .map(|r| seq.window(base + r * MATRIX_DIM, MATRIX_DIM))
            .collect();
        match gf2_rank(&rows, MATRIX_DIM) {
            32 => counts[0] += 1,
            31 => counts[1] += 1,
            _ => counts[2] += 1,
        }
    }
    let nf = blocks as f64;
    let mut chi2 = 0.0;
    for (count, p) in counts.iter().zip(RANK_PROBS) {
        let expect = nf * p;
        chi2 += (*count as f64 - expect) * (*count as f64 - expect) / expect;
    }
    let p = Probability::new(igamc(1.0, chi2 / 2.0)?)?;
    Ok(TestResult::new(id(5), vec![p])
        .with_stat("n_matrices", nf)
        .with_stat("full_rank", counts[0] as f64)
        .with_stat("rank_m1", counts[1] as f64)
        .with_stat("rank_lower", counts[2] as f64)
        .with_stat("chi2", chi2))
}

/// Magnitudes |F_j| of the Fourier transform of the +-1 sequence, for
/// j = 0 .. n/2 - 1.
pub fn dft_magnitudes(seq: &BitSequence) -> Result<Vec<f64>> {
    let n = seq.len();
    if n < 2 {
        return Err(Error::domain("spectral transform needs at least 2 bits"));
    }
    let mut buf: Vec<Complex<f64>> = seq
        .iter()
        .map(|b| Complex::new(2.0 * b as f64 - 1.0, 0.0))
        .collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    Ok(buf[..n / 2].iter().map(|c| c.norm()).collect())
}

/// Test 6. Counts sub-threshold Fourier magnitudes over the first half
/// of the spectrum and compares against the 95% expectation.
///
/// `log10` switches the threshold to sqrt(log10(20) n); the default is
/// the natural log. `quarter_variance` divides the deviation by
/// sqrt(n 0.95 0.05 / 4) instead of the default /2 denominator.
pub fn dft_spectral(seq: &BitSequence, log10: bool, quarter_variance: bool) -> Result<TestResult> {
    let n = seq.len();
    if n % 2 != 0 {
        return Err(Error::domain("spectral test needs an even bit count"));
    }
    let mags = dft_magnitudes(seq)?;
    let log20 = if log10 { 20.0f64.log10() } else { 20.0f64.ln() };
    let threshold = (log20 * n as f64).sqrt();
    let n0 = 0.95 * n as f64 / 2.0;
    let n1 = mags.iter().filter(|&&m| m < threshold).count();
    let divisor = if quarter_variance { 4.0 } else { 2.0 };
    let d = (n1 as f64 - n0) / (n as f64 * 0.95 * 0.05 / divisor).sqrt();
    let p = Probability::new(erfc(d.abs() / SQRT_2)?)?;
    Ok(TestResult::new(id(6), vec![p])
        .with_stat("threshold", threshold)
        .with_stat("n0", n0)
        .with_stat("n1", n1 as f64)
        .with_stat("d", d))
}
