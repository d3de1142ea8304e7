use std::collections::{BTreeSet, HashSet};
use std::fs;
use std::path::{Path, PathBuf};

use fishery_core::{validate_specs, EconomyParams, PolicySpec, RegrowthMode, SpeciesSpec};
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

pub const CONFIG_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

fn all_formats() -> Vec<OutputFormat> {
    vec![OutputFormat::Csv, OutputFormat::Json]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dir: Option<PathBuf>,
    #[serde(default = "all_formats")]
    pub formats: Vec<OutputFormat>,
}

impl Default for OutputSpec {
    fn default() -> Self {
        Self { dir: None, formats: all_formats() }
    }
}

/// Upper bounds a config declares for its own run length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Limits {
    pub max_days: u32,
    pub max_casts_per_day: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Self { max_days: 100_000, max_casts_per_day: 100_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub config_version: u32,
    pub specs: Vec<SpeciesSpec>,
    #[serde(default)]
    pub econ: EconomyParams,
    #[serde(default)]
    pub regrowth: RegrowthMode,
    pub policy: PolicySpec,
    pub casts_per_day: u32,
    pub days: u32,
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub context: BTreeSet<String>,
    #[serde(default)]
    pub outputs: OutputSpec,
    #[serde(default)]
    pub limits: Limits,
}

impl ExperimentConfig {
    /// Read and validate a JSON config file.
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|source| HarnessError::ConfigRead { path: path.to_path_buf(), source })?;
        let config: Self = serde_json::from_str(&text)
            .map_err(|source| HarnessError::ConfigParse { path: path.to_path_buf(), source })?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let config: Self = serde_json::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.config_version != CONFIG_VERSION {
            return Err(HarnessError::Config(format!(
                "config_version {} is not supported (expected {CONFIG_VERSION})",
                self.config_version
            )));
        }
        validate_specs(&self.specs)?;
        self.econ.validate()?;
        self.regrowth.validate()?;
        self.policy.validate()?;
        if self.seeds.is_empty() {
            return Err(HarnessError::Config("at least one seed is required".into()));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = self.seeds.iter().find(|s| !seen.insert(**s)) {
            return Err(HarnessError::Config(format!("seed {dup} is listed twice")));
        }
        if self.days == 0 || self.days > self.limits.max_days {
            return Err(HarnessError::Config(format!(
                "days {} must be in 1..={}",
                self.days, self.limits.max_days
            )));
        }
        if self.casts_per_day > self.limits.max_casts_per_day {
            return Err(HarnessError::Config(format!(
                "casts_per_day {} exceeds max_casts_per_day {}",
                self.casts_per_day, self.limits.max_casts_per_day
            )));
        }
        if self.outputs.formats.is_empty() {
            return Err(HarnessError::Config("outputs.formats must not be empty".into()));
        }
        Ok(())
    }
}
