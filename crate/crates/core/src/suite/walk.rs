//! Random walk tests over the +1/-1 partial sums.
//!
//! The cumulative sums test bounds the maximum drift of the walk in
//! both scan directions. The excursion tests split the walk into
//! cycles between returns to the origin and score how often each small
//! state is visited; both are gated on observing at least 500 cycles,
//! reporting an inapplicable result below that.

use crate::bits::BitSequence;
use crate::error::{Error, Result};
use crate::result::TestResult;
use crate::special::{erfc, igamc, normal_cdf, Probability};
use crate::suite::id;

/// Minimum cycle count for the excursion sampling laws.
const MIN_CYCLES: u64 = 500;

/// Test 13. Maximum absolute partial sum of the +1/-1 mapping, scored
/// in the forward and backward scan directions; one P-value each.
pub fn cumulative_sums(seq: &BitSequence) -> Result<TestResult> {
    let n = seq.len();
    if n == 0 {
        return Err(Error::domain("cumulative sums need a non-empty sequence"));
    }
    let mut sum: i64 = 0;
    let mut z_forward: i64 = 0;
    for i in 0..n {
        sum += if seq.get(i) == 1 { 1 } else { -1 };
        z_forward = z_forward.max(sum.abs());
    }
    sum = 0;
    let mut z_backward: i64 = 0;
    for i in (0..n).rev() {
        sum += if seq.get(i) == 1 { 1 } else { -1 };
        z_backward = z_backward.max(sum.abs());
    }
    let p_forward = max_drift_p(z_forward as u64, n)?;
    let p_backward = max_drift_p(z_backward as u64, n)?;
    Ok(TestResult::new(id(13), vec![p_forward, p_backward])
        .with_stat("z_forward", z_forward as f64)
        .with_stat("z_backward", z_backward as f64))
}

/// P(max |S_i| >= z) for an n-step symmetric walk, by the reflection
/// series over the standard normal CDF.
fn max_drift_p(z: u64, n: usize) -> Result<Probability> {
    let nf = n as f64;
    let zf = z as f64;
    let scale = zf / nf.sqrt();
    let ratio = nf / zf;
    let mut p = 1.0;
    let lo = ((-ratio + 1.0) / 4.0).floor() as i64;
    let hi = ((ratio - 1.0) / 4.0).floor() as i64;
    for k in lo..=hi {
        let kf = k as f64;
        p -= normal_cdf((4.0 * kf + 1.0) * scale)? - normal_cdf((4.0 * kf - 1.0) * scale)?;
    }
    let lo = ((-ratio - 3.0) / 4.0).floor() as i64;
    for k in lo..=hi {
        let kf = k as f64;
        p += normal_cdf((4.0 * kf + 3.0) * scale)? - normal_cdf((4.0 * kf + 1.0) * scale)?;
    }
    // The reflection series is asymptotic: for very short walks the
    // partial sums can drift a few percent past the unit interval.
    Probability::new(p.clamp(0.0, 1.0))
}

/// Walk summary shared by the two excursion tests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Excursions {
    /// Number of cycles: returns to the origin, plus one for the final
    /// open segment when the walk ends off zero.
    pub j: u64,
    /// Per-cycle visit-count classes 0..=5 for states -4..-1, 1..4.
    pub nu: [[u64; 6]; 8],
    /// Total visits per state over the whole walk, states -9..-1, 1..9.
    pub xi: [u64; 18],
}

/// Accumulates cycle and visit statistics over the partial-sum walk.
pub fn walk_stats(seq: &BitSequence) -> Excursions {
    let mut j = 0u64;
    let mut nu = [[0u64; 6]; 8];
    let mut xi = [0u64; 18];
    let mut visits = [0u64; 8];
    let mut sum: i64 = 0;
    for i in 0..seq.len() {
        sum += if seq.get(i) == 1 { 1 } else { -1 };
        if sum == 0 {
            j += 1;
            for (state, count) in visits.iter_mut().enumerate() {
                nu[state][(*count).min(5) as usize] += 1;
                *count = 0;
            }
        } else {
            if (-4..=4).contains(&sum) {
                let idx = if sum < 0 { sum + 4 } else { sum + 3 } as usize;
                visits[idx] += 1;
            }
            if (-9..=9).contains(&sum) {
                let idx = if sum < 0 { sum + 9 } else { sum + 8 } as usize;
                xi[idx] += 1;
            }
        }
    }
    if sum != 0 {
        j += 1;
        for (state, count) in visits.iter_mut().enumerate() {
            nu[state][(*count).min(5) as usize] += 1;
        }
    }
    Excursions { j, nu, xi }
}

/// Probability that one cycle visits state s exactly k times, for
/// classes k = 0..=4 and "5 or more".
fn visit_probs(s: i64) -> [f64; 6] {
    let a = s.unsigned_abs() as f64;
    let leave = 1.0 / (2.0 * a);
    let stay = 1.0 - leave;
    let mut pi = [0.0f64; 6];
    pi[0] = stay;
    for k in 1..=4usize {
        pi[k] = stay.powi(k as i32 - 1) / (4.0 * a * a);
    }
    pi[5] = leave * stay.powi(4);
    pi
}

/// Test 14. Chi-squares the per-cycle visit-count classes for the
/// eight states nearest the origin, one P-value per state in the order
/// -4..-1, 1..4.
pub fn random_excursions(seq: &BitSequence) -> Result<TestResult> {
    let stats = walk_stats(seq);
    let j = stats.j;
    if j < MIN_CYCLES {
        return Ok(TestResult::inapplicable(
            id(14),
            format!("only {j} cycles; the visit-count law needs at least {MIN_CYCLES}"),
        )
        .with_stat("j", j as f64));
    }
    let jf = j as f64;
    let mut p_values = Vec::with_capacity(8);
    let mut chi2s = Vec::with_capacity(8);
    for (idx, counts) in stats.nu.iter().enumerate() {
        let s = if idx < 4 { idx as i64 - 4 } else { idx as i64 - 3 };
        let pi = visit_probs(s);
        let mut chi2 = 0.0;
        for (count, pi_k) in counts.iter().zip(pi) {
            let expect = jf * pi_k;
            chi2 += (*count as f64 - expect) * (*count as f64 - expect) / expect;
        }
        p_values.push(Probability::new(igamc(2.5, chi2 / 2.0)?)?);
        chi2s.push((s, chi2));
    }
    let mut result = TestResult::new(id(14), p_values).with_stat("j", jf);
    for (s, chi2) in chi2s {
        result = result.with_stat(&format!("chi2[{s}]"), chi2);
    }
    Ok(result)
}

/// Test 15. Compares the total visit count of each state -9..-1, 1..9
/// against its expectation J, one P-value per state.
pub fn random_excursions_variant(seq: &BitSequence) -> Result<TestResult> {
    let stats = walk_stats(seq);
    let j = stats.j;
    if j < MIN_CYCLES {
        return Ok(TestResult::inapplicable(
            id(15),
            format!("only {j} cycles; the visit-count law needs at least {MIN_CYCLES}"),
        )
        .with_stat("j", j as f64));
    }
    let jf = j as f64;
    let mut p_values = Vec::with_capacity(18);
    let mut result = TestResult::new(id(15), Vec::new()).with_stat("j", jf);
    for (idx, &count) in stats.xi.iter().enumerate() {
        let s = if idx < 9 { idx as i64 - 9 } else { idx as i64 - 8 };
        let a = s.unsigned_abs() as f64;
        let x = (count as f64 - jf).abs() / (2.0 * jf * (4.0 * a - 2.0)).sqrt();
        p_values.push(Probability::new(erfc(x)?)?);
        result = result.with_stat(&format!("xi[{s}]"), count as f64);
    }
    result.p_values = p_values;
    Ok(result)
}
