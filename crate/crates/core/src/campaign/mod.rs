//! Campaign methodology: many sequences, pooled verdicts.
//!
//! A campaign draws m sequences from one generator family (reseeded per
//! sequence index), runs a selected set of tests on per-test prefixes
//! of each sequence, and pools all resulting P-values per test. Every
//! test is then judged twice: the proportion of P-values at or above
//! the significance level must clear a three-sigma threshold, and the
//! P-values themselves must look uniform on [0,1] (the "POP" check, a
//! 10-bin chi-square). Results that a gate marked inapplicable pool
//! their zero P-values as failures.

pub mod config;
pub mod report;

pub use config::CampaignConfig;
pub use report::{fixed6, histogram_csv, render_report, sci6, ReportFormat};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::result::TestResult;
use crate::special::{igamc, Probability};
use crate::suite::run_test;

/// Header labels of the 11-column P-value histogram.
pub const APPENDIX_LABELS: [&str; 11] = [
    "0-.01", ".01-.1", ".1-.2", ".2-.3", ".3-.4", ".4-.5", ".5-.6", ".6-.7", ".7-.8", ".8-.9",
    ".9-1",
];

/// Minimum pooled sample size for the 10-bin uniformity chi-square.
pub const MIN_POP_SAMPLES: usize = 55;

/// Passing-proportion threshold (1-a) - 3*sqrt(a(1-a)/count): three
/// binomial standard deviations below the ideal passing rate.
///
/// `sample_count` must be at least 1/alpha, so the expected failure
/// count under an ideal source is at least one.
pub fn threshold(alpha: f64, sample_count: usize) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::config(format!(
            "significance level {alpha} outside (0, 1)"
        )));
    }
    if (sample_count as f64) * alpha < 1.0 {
        return Err(Error::config(format!(
            "{sample_count} samples are too few at significance {alpha}; need at least {}",
            (1.0 / alpha).ceil()
        )));
    }
    Ok((1.0 - alpha) - 3.0 * (alpha * (1.0 - alpha) / sample_count as f64).sqrt())
}

/// Verdict on the fraction of P-values at or above the significance
/// level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Proportion {
    /// Fraction observed.
    pub observed: f64,
    /// The [`threshold`] for this sample size.
    pub expected: f64,
    /// `observed >= expected`.
    pub success: bool,
}

/// Scores a pooled P-value list against the proportion threshold.
pub fn proportion(p_values: &[Probability], alpha: f64) -> Result<Proportion> {
    if p_values.is_empty() {
        return Err(Error::domain("no P-values to aggregate"));
    }
    let expected = threshold(alpha, p_values.len())?;
    let passing = p_values.iter().filter(|p| p.passes(alpha)).count();
    let observed = passing as f64 / p_values.len() as f64;
    Ok(Proportion {
        observed,
        expected,
        success: observed >= expected,
    })
}

/// P-value histogram in the two layouts reports need: the 11-column
/// appendix display (sub-alpha failures split out) and plain deciles
/// for the uniformity chi-square.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PValueBins {
    /// Counts for [0,.01), [.01,.1), then nine deciles up to [.9,1].
    pub appendix: [u64; 11],
    /// Counts for ten equal deciles, 1.0 landing in the last.
    pub deciles: [u64; 10],
}

impl PValueBins {
    pub fn push(&mut self, p: Probability) {
        let v = p.value();
        let decile = ((v * 10.0).floor() as usize).min(9);
        self.deciles[decile] += 1;
        let appendix = if v < 0.01 {
            0
        } else if v < 0.1 {
            1
        } else {
            decile + 1
        };
        self.appendix[appendix] += 1;
    }

    pub fn from_slice(p_values: &[Probability]) -> Self {
        let mut bins = PValueBins::default();
        for &p in p_values {
            bins.push(p);
        }
        bins
    }

    /// Number of P-values collected; identical for both layouts.
    pub fn total(&self) -> u64 {
        self.appendix.iter().sum()
    }
}

/// Verdict on the uniformity of a pooled P-value distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Uniformity {
    /// P-value of the 10-bin chi-square over the deciles.
    pub pop: Probability,
    /// `pop >= 0.0001`.
    pub uniform: bool,
}

/// The "P-value of P-values": chi-squares the decile histogram against
/// the uniform law. Needs at least [`MIN_POP_SAMPLES`] values for the
/// chi-square approximation to hold.
pub fn pop_uniformity(p_values: &[Probability]) -> Result<Uniformity> {
    if p_values.len() < MIN_POP_SAMPLES {
        return Err(Error::domain(format!(
            "{} P-values are too few for the 10-bin uniformity check; need at least {MIN_POP_SAMPLES}",
            p_values.len()
        )));
    }
    let bins = PValueBins::from_slice(p_values);
    let expect = p_values.len() as f64 / 10.0;
    let chi2: f64 = bins
        .deciles
        .iter()
        .map(|&f| {
            let d = f as f64 - expect;
            d * d / expect
        })
        .sum();
    let pop = Probability::new(igamc(4.5, chi2 / 2.0)?)?;
    Ok(Uniformity {
        pop,
        uniform: pop.value() >= 0.0001,
    })
}

/// One aggregated row of a campaign report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    /// Test number, 1..=15.
    pub test: u8,
    pub name: String,
    /// Prefix length the test ran on.
    pub length: usize,
    pub bins: PValueBins,
    /// Pooled P-value count: sequences times per-test arity.
    pub total: u64,
    pub expected_proportion: f64,
    pub observed_proportion: f64,
    pub proportion_success: bool,
    /// Uniformity P-value; absent when the pool is under
    /// [`MIN_POP_SAMPLES`].
    pub pop: Option<f64>,
    pub uniform: Option<bool>,
}

/// Aggregated campaign output, serializable for later re-rendering.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    /// Generator family label.
    pub generator: String,
    /// Number of sequences drawn.
    pub sequences: usize,
    pub alpha: f64,
    pub rows: Vec<ReportRow>,
}

/// Runs the configured campaign. `jobs` caps the worker threads (None
/// or Some(0) lets the pool size itself); the report is identical for
/// any worker count because sequences are aggregated in index order.
pub fn run_campaign(config: &CampaignConfig, jobs: Option<usize>) -> Result<CampaignReport> {
    config.validate()?;
    let max_len = config
        .tests
        .iter()
        .map(|&t| config.length_for(t))
        .max()
        .unwrap_or(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::config(format!("worker pool: {e}")))?;
    let per_sequence: Result<Vec<Vec<TestResult>>> = pool.install(|| {
        (0..config.sequences)
            .into_par_iter()
            .map(|k| {
                run_sequence(config, k, max_len).map_err(|e| e.with_context(format!("sequence {k}")))
            })
            .collect()
    });
    let per_sequence = per_sequence?;

    let mut rows = Vec::with_capacity(config.tests.len());
    for (ti, &test) in config.tests.iter().enumerate() {
        let pooled: Vec<Probability> = per_sequence
            .iter()
            .flat_map(|results| results[ti].p_values.iter().copied())
            .collect();
        let bins = PValueBins::from_slice(&pooled);
        let prop = proportion(&pooled, config.alpha)?;
        let (pop, uniform) = if pooled.len() >= MIN_POP_SAMPLES {
            let u = pop_uniformity(&pooled)?;
            (Some(u.pop.value()), Some(u.uniform))
        } else {
            (None, None)
        };
        rows.push(ReportRow {
            test: test.get(),
            name: test.name().to_string(),
            length: config.length_for(test),
            bins,
            total: bins.total(),
            expected_proportion: prop.expected,
            observed_proportion: prop.observed,
            proportion_success: prop.success,
            pop,
            uniform,
        });
    }
    Ok(CampaignReport {
        generator: config.generator.label().to_string(),
        sequences: config.sequences,
        alpha: config.alpha,
        rows,
    })
}

/// One master sequence, sliced into per-test prefixes.
fn run_sequence(config: &CampaignConfig, k: usize, max_len: usize) -> Result<Vec<TestResult>> {
    let spec = config.generator.for_campaign_index(k)?;
    let master = spec.generate(max_len)?;
    config
        .tests
        .iter()
        .map(|&t| {
            let seq = master.prefix(config.length_for(t))?;
            run_test(&seq, t, &config.params)
        })
        .collect()
}
