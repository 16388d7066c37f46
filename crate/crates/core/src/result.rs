//! Test identities and the result record shared by the whole battery.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::special::Probability;

/// Number of tests in the battery.
pub const TEST_COUNT: usize = 15;

/// Identifies one of the fifteen tests by its conventional number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct TestId(u8);

impl TestId {
    pub fn new(id: u8) -> Result<Self> {
        if (1..=TEST_COUNT as u8).contains(&id) {
            Ok(TestId(id))
        } else {
            Err(Error::config(format!("test id {id} outside 1..=15")))
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = TestId> {
        (1..=TEST_COUNT as u8).map(TestId)
    }

    /// Parses a selection like `all` or `1,3,6` into ascending unique
    /// ids.
    pub fn parse_list(s: &str) -> Result<Vec<TestId>> {
        if s.trim() == "all" {
            return Ok(TestId::all().collect());
        }
        let mut ids: Vec<u8> = Vec::new();
        for part in s.split(',') {
            let part = part.trim();
            let id: u8 = part.parse().map_err(|_| {
                Error::config(format!("tests: {part:?} is not a test number"))
            })?;
            ids.push(id);
        }
        ids.sort_unstable();
        ids.dedup();
        ids.into_iter().map(TestId::new).collect()
    }

    pub fn name(self) -> &'static str {
        match self.0 {
            1 => "frequency",
            2 => "block-frequency",
            3 => "runs",
            4 => "longest-run",
            5 => "matrix-rank",
            6 => "spectral",
            7 => "non-overlapping-template",
            8 => "overlapping-template",
            9 => "universal",
            10 => "linear-complexity",
            11 => "serial",
            12 => "approximate-entropy",
            13 => "cumulative-sums",
            14 => "random-excursions",
            15 => "random-excursions-variant",
            _ => unreachable!(),
        }
    }

    /// How many P-values the test emits per sequence.
    pub fn arity(self) -> usize {
        match self.0 {
            11 | 13 => 2,
            14 => 8,
            15 => 18,
            _ => 1,
        }
    }

    /// Shortest sequence the test accepts in battery runs.
    pub fn min_length(self) -> usize {
        match self.0 {
            1 | 3 | 12 | 13 => 100,
            2 => 9_000,
            4 => 128,
            5 => 38_912,
            6 => 1_000,
            7 => 1_048_576,
            8 | 10 | 11 | 14 | 15 => 1_000_000,
            9 => 1_342_400,
            _ => unreachable!(),
        }
    }
}

impl std::fmt::Display for TestId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Outcome of one test on one sequence.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct TestResult {
    pub test: TestId,
    /// One entry per P-value the test produces; all zeros when the test
    /// was inapplicable.
    pub p_values: Vec<Probability>,
    /// Named intermediate statistics, for diagnostics.
    pub statistics: BTreeMap<String, f64>,
    /// False when a prerequisite failed and the result is a certified
    /// failure rather than a measurement.
    pub applicable: bool,
    /// Why the test was inapplicable, when it was.
    pub fail_reason: Option<String>,
    /// Advisory notes (e.g. the sequence is shorter than recommended).
    pub warning: Option<String>,
}

impl TestResult {
    pub fn new(test: TestId, p_values: Vec<Probability>) -> Self {
        TestResult {
            test,
            p_values,
            statistics: BTreeMap::new(),
            applicable: true,
            fail_reason: None,
            warning: None,
        }
    }

    /// A certified failure: every P-value pinned to zero.
    pub fn inapplicable(test: TestId, reason: impl Into<String>) -> Self {
        TestResult {
            test,
            p_values: vec![Probability::ZERO; test.arity()],
            statistics: BTreeMap::new(),
            applicable: false,
            fail_reason: Some(reason.into()),
            warning: None,
        }
    }

    pub fn with_stat(mut self, name: &str, value: f64) -> Self {
        self.statistics.insert(name.to_string(), value);
        self
    }

    pub fn with_warning(mut self, note: impl Into<String>) -> Self {
        self.warning = Some(note.into());
        self
    }

    /// True when the result is applicable and every P-value clears `alpha`.
    pub fn passes(&self, alpha: f64) -> bool {
        self.applicable && self.p_values.iter().all(|p| p.passes(alpha))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_enumerate_and_validate() {
        assert_eq!(TestId::all().count(), 15);
        assert!(TestId::new(0).is_err());
        assert!(TestId::new(16).is_err());
        assert_eq!(TestId::new(9).unwrap().name(), "universal");
    }

    #[test]
    fn arities_sum_to_appendix_row_count() {
        // 11 tests emit one value, serial and cusum emit two, the
        // excursion tests emit eight and eighteen: 41 per sequence.
        let total: usize = TestId::all().map(|t| t.arity()).sum();
        assert_eq!(total, 41);
    }

    #[test]
    fn inapplicable_results_are_zero_filled_failures() {
        let r = TestResult::inapplicable(TestId::new(14).unwrap(), "J below 500");
        assert_eq!(r.p_values.len(), 8);
        assert!(r.p_values.iter().all(|p| p.value() == 0.0));
        assert!(!r.passes(0.01));
    }
}
