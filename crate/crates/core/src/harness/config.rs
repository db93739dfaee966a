use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Ball,
    Holo,
    Minimal,
    Search,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Ball, Suite::Holo, Suite::Minimal, Suite::Search];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Ball => "ball",
            Suite::Holo => "holo",
            Suite::Minimal => "minimal",
            Suite::Search => "search",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s.trim())
            .ok_or_else(|| Error::Config(format!("unknown suite {:?} (expected ball, holo, minimal or search)", s.trim())))
    }
}

/// Parses a comma-separated suite list; duplicates collapse, order is canonical.
pub fn parse_suites(list: &str) -> Result<Vec<Suite>> {
    let mut suites: Vec<Suite> = list.split(',').filter(|s| !s.trim().is_empty()).map(str::parse).collect::<Result<_>>()?;
    suites.sort();
    suites.dedup();
    Ok(suites)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub dimensions: Vec<usize>,
    pub samples_per_check: usize,
    pub tolerances: Tolerances,
    pub out: Option<PathBuf>,
    pub suites: Vec<Suite>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 1,
            dimensions: vec![1, 2, 3],
            samples_per_check: 100,
            tolerances: Tolerances::new(),
            out: None,
            suites: Suite::ALL.to_vec(),
        }
    }
}

/// Echo of the settings that influence results; the output path is left out so
/// that reports written to different places compare equal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigEcho {
    pub seed: u64,
    pub dimensions: Vec<usize>,
    pub samples_per_check: usize,
    pub suites: Vec<Suite>,
    pub tolerance_overrides: BTreeMap<String, f64>,
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.suites.is_empty() {
            return Err(Error::Config("no suites selected".into()));
        }
        if self.samples_per_check == 0 {
            return Err(Error::Config("samples per check must be at least 1".into()));
        }
        if self.dimensions.is_empty() || self.dimensions.contains(&0) {
            return Err(Error::Config("dimensions must be a nonempty list of positive integers".into()));
        }
        Ok(())
    }

    pub fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            seed: self.seed,
            dimensions: self.dimensions.clone(),
            samples_per_check: self.samples_per_check,
            suites: self.suites.clone(),
            tolerance_overrides: self.tolerances.overrides().clone(),
        }
    }

    /// Applies one `key = value` setting. Keys mirror the CLI flags:
    /// `seed`, `suites`, `samples`, `dimensions`, `out`, and `tolerance`
    /// (value `NAME=VALUE`, repeatable).
    pub fn apply(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        let bad = |what: &str| Error::Config(format!("invalid {what} {value:?}"));
        match key.trim() {
            "seed" => self.seed = value.parse().map_err(|_| bad("seed"))?,
            "suites" => self.suites = parse_suites(value)?,
            "samples" => self.samples_per_check = value.parse().map_err(|_| bad("sample count"))?,
            "dimensions" => {
                self.dimensions = value
                    .split(',')
                    .map(|d| d.trim().parse::<usize>().map_err(|_| bad("dimension list")))
                    .collect::<Result<_>>()?
            }
            "out" => self.out = Some(PathBuf::from(value)),
            "tolerance" => {
                let (name, v) = parse_tolerance_override(value)?;
                self.tolerances.set(&name, v)?;
            }
            other => return Err(Error::Config(format!("unknown config key {other:?}"))),
        }
        Ok(())
    }

    /// Flat `key = value` text; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = SuiteConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) =
                line.split_once('=').ok_or_else(|| Error::Config(format!("line {}: expected key = value", i + 1)))?;
            cfg.apply(key, value).map_err(|e| Error::Config(format!("line {}: {e}", i + 1)))?;
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }
}

/// Splits `NAME=VALUE`.
pub fn parse_tolerance_override(s: &str) -> Result<(String, f64)> {
    let (name, value) = s.split_once('=').ok_or_else(|| Error::Config(format!("expected NAME=VALUE, got {s:?}")))?;
    let v: f64 = value.trim().parse().map_err(|_| Error::Config(format!("invalid tolerance value {value:?}")))?;
    Ok((name.trim().to_string(), v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flat_config() {
        let cfg = SuiteConfig::parse(
            "# comment\nseed = 7\nsuites = minimal, holo\nsamples=12\ndimensions = 1,5\ntolerance = growth=1e-9\nout = /tmp/x\n",
        )
        .unwrap();
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.suites, vec![Suite::Holo, Suite::Minimal]);
        assert_eq!(cfg.samples_per_check, 12);
        assert_eq!(cfg.dimensions, vec![1, 5]);
        assert_eq!(cfg.tolerances.get("growth"), 1e-9);
        assert_eq!(cfg.out, Some(PathBuf::from("/tmp/x")));
        cfg.validate().unwrap();
    }

    #[test]
    fn rejects_bad_settings() {
        assert!(SuiteConfig::parse("suites = ball, disks\n").is_err());
        assert!(SuiteConfig::parse("colour = blue\n").is_err());
        assert!(SuiteConfig::parse("tolerance = nonsense=1\n").is_err());
        assert!(SuiteConfig::parse("seed 3\n").is_err());
        let cfg = SuiteConfig::parse("suites = \n").unwrap();
        assert_eq!(cfg.validate().unwrap_err().to_string(), Error::Config("no suites selected".into()).to_string());
        let cfg = SuiteConfig::parse("samples = 0\n").unwrap();
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn echo_omits_output_path() {
        let mut a = SuiteConfig::default();
        let mut b = SuiteConfig::default();
        a.out = Some("/a".into());
        b.out = Some("/b".into());
        assert_eq!(a.echo(), b.echo());
    }
}
