//! Campaign configuration: key=value files and validation.
//!
//! A config file is plain text, one `key = value` per line, `#` for
//! comments. Unknown keys, keys for a generator family other than the
//! selected one, and duplicate keys are rejected rather than ignored.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::generators::GeneratorSpec;
use crate::result::TestId;
use crate::suite::{TestParams, Template};

/// A parsed and validated campaign description.
#[derive(Debug, Clone)]
pub struct CampaignConfig {
    pub generator: GeneratorSpec,
    /// Number of sequences to draw (key `m`).
    pub sequences: usize,
    /// Significance level (key `alpha`).
    pub alpha: f64,
    /// Selected tests, ascending and unique (key `tests`).
    pub tests: Vec<TestId>,
    /// Per-test length overrides (keys `len.<id>`); unlisted tests use
    /// their standard length.
    pub lengths: BTreeMap<u8, usize>,
    pub params: TestParams,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            generator: GeneratorSpec::ParkMiller { seed: 1, bits_per_word: 8 },
            sequences: 300,
            alpha: 0.01,
            tests: TestId::all().collect(),
            lengths: BTreeMap::new(),
            params: TestParams::default(),
        }
    }
}

impl CampaignConfig {
    /// Length test `t` runs on: the override if present, else the
    /// test's standard length.
    pub fn length_for(&self, t: TestId) -> usize {
        self.lengths
            .get(&t.get())
            .copied()
            .unwrap_or_else(|| t.min_length())
    }

    /// Checks cross-field invariants. Parsing runs this; hand-built
    /// configs are re-checked by the campaign runner.
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::config(format!(
                "significance level {} outside (0, 1)",
                self.alpha
            )));
        }
        if (self.sequences as f64) * self.alpha < 1.0 {
            return Err(Error::config(format!(
                "m = {} sequences are too few at significance {}; need at least {}",
                self.sequences,
                self.alpha,
                (1.0 / self.alpha).ceil()
            )));
        }
        for (&id, &len) in &self.lengths {
            let t = TestId::new(id)?;
            if len < t.min_length() {
                return Err(Error::config(format!(
                    "len.{id} = {len} is below the {}-bit minimum for {}",
                    t.min_length(),
                    t.name()
                )));
            }
        }
        Ok(())
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        std::fs::read_to_string(path)
            .map_err(|e| {
                Error::Io(std::io::Error::new(
                    e.kind(),
                    format!("{}: {e}", path.display()),
                ))
            })?
            .parse()
    }
}

impl FromStr for CampaignConfig {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut pairs: BTreeMap<String, String> = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::config(format!(
                    "line {}: expected key=value, found {line:?}",
                    idx + 1
                )));
            };
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if pairs.insert(key.clone(), value).is_some() {
                return Err(Error::config(format!("duplicate key {key:?}")));
            }
        }

        let generator = build_generator(&mut pairs)?;
        let sequences = take_parsed::<usize>(&mut pairs, "m")?.unwrap_or(300);
        let alpha = take_parsed::<f64>(&mut pairs, "alpha")?.unwrap_or(0.01);
        let tests = match pairs.remove("tests") {
            None => TestId::all().collect(),
            Some(s) => TestId::parse_list(&s)?,
        };

        let mut lengths = BTreeMap::new();
        let len_keys: Vec<String> = pairs
            .keys()
            .filter(|k| k.starts_with("len."))
            .cloned()
            .collect();
        for key in len_keys {
            let value = pairs.remove(&key).expect("key listed above");
            let id: u8 = key[4..]
                .parse()
                .map_err(|_| Error::config(format!("{key}: bad test number")))?;
            TestId::new(id)?;
            let n: usize = value
                .parse()
                .map_err(|e| Error::config(format!("{key}: {e}")))?;
            lengths.insert(id, n);
        }

        let mut params = TestParams::default();
        if let Some(t) = pairs.remove("template") {
            params.template = Some(Template::from_ascii(&t)?);
        }
        if let Some(v) = take_parsed::<usize>(&mut pairs, "t7.blocks")? {
            params.t7_blocks = v;
        }
        if let Some(v) = take_parsed::<usize>(&mut pairs, "t8.m")? {
            params.t8_m = v;
        }
        if let Some(v) = take_parsed::<bool>(&mut pairs, "t8.legacy_pi")? {
            params.t8_legacy_pi = v;
        }
        if let Some(v) = take_parsed::<u32>(&mut pairs, "universal.l")? {
            params.universal_l = Some(v);
        }
        if let Some(v) = take_parsed::<usize>(&mut pairs, "lc.m")? {
            params.lc_m = v;
        }
        if let Some(v) = take_parsed::<u32>(&mut pairs, "serial.m")? {
            params.serial_m = Some(v);
        }
        if let Some(v) = take_parsed::<u32>(&mut pairs, "apen.m")? {
            params.apen_m = v;
        }
        if let Some(v) = take_parsed::<bool>(&mut pairs, "dft.log10")? {
            params.dft_log10 = v;
        }
        if let Some(v) = take_parsed::<bool>(&mut pairs, "dft.quarter_variance")? {
            params.dft_quarter_variance = v;
        }

        if let Some(key) = pairs.keys().next() {
            return Err(Error::config(format!(
                "unknown or inapplicable key {key:?}"
            )));
        }

        let config = CampaignConfig {
            generator,
            sequences,
            alpha,
            tests,
            lengths,
            params,
        };
        config.validate()?;
        Ok(config)
    }
}

fn take_parsed<T: FromStr>(pairs: &mut BTreeMap<String, String>, key: &str) -> Result<Option<T>>
where
    T::Err: Display,
{
    match pairs.remove(key) {
        None => Ok(None),
        Some(v) => v
            .parse::<T>()
            .map(Some)
            .map_err(|e| Error::config(format!("{key}: {e}"))),
    }
}

fn build_generator(pairs: &mut BTreeMap<String, String>) -> Result<GeneratorSpec> {
    let kind = pairs
        .remove("generator")
        .unwrap_or_else(|| "pm".to_string());
    match kind.as_str() {
        "pm" => Ok(GeneratorSpec::ParkMiller {
            seed: take_parsed::<u32>(pairs, "pm.seed")?.unwrap_or(1),
            bits_per_word: take_parsed::<u32>(pairs, "pm.bits_per_word")?.unwrap_or(8),
        }),
        "knuth" => Ok(GeneratorSpec::Knuth {
            seed: take_parsed::<u64>(pairs, "knuth.seed")?.unwrap_or(1),
            bits_per_word: take_parsed::<u32>(pairs, "knuth.bits_per_word")?.unwrap_or(32),
        }),
        "bbs" => {
            let p = take_parsed::<BigUint>(pairs, "bbs.p")?
                .ok_or_else(|| Error::config("bbs.p is required for generator=bbs"))?;
            let q = take_parsed::<BigUint>(pairs, "bbs.q")?
                .ok_or_else(|| Error::config("bbs.q is required for generator=bbs"))?;
            let x0 = take_parsed::<BigUint>(pairs, "bbs.x0")?
                .ok_or_else(|| Error::config("bbs.x0 is required for generator=bbs"))?;
            Ok(GeneratorSpec::Bbs { p, q, x0 })
        }
        other => Err(Error::config(format!(
            "unknown generator {other:?}; expected pm, knuth, or bbs"
        ))),
    }
}
