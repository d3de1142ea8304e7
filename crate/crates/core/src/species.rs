use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{FisheryError, Result};

/// Stable identifier of a species, e.g. `"carp"`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SpeciesId(pub String);

impl SpeciesId {
    pub fn new(id: impl Into<String>) -> Self {
        Self(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for SpeciesId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for SpeciesId {
    fn from(s: &str) -> Self {
        Self(s.to_owned())
    }
}

fn default_mutation_sd() -> f64 {
    2.0
}

fn default_mutation_prob() -> f64 {
    1.0
}

/// Immutable per-species parameters.
///
/// Lengths are in inches. `advisory_threshold` and `advisory_hysteresis`
/// default to 40% and 5% of the length range respectively, so a freshly
/// seeded uniform population (mean near the midpoint) starts healthy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpeciesSpec {
    pub species_id: SpeciesId,
    pub name: String,
    pub base_price: u64,
    pub min_length: f64,
    pub max_length: f64,
    pub population_cap: usize,
    pub initial_count: usize,
    #[serde(default = "default_mutation_sd")]
    pub mutation_sd: f64,
    #[serde(default = "default_mutation_prob")]
    pub mutation_prob: f64,
    #[serde(default)]
    pub availability_tags: BTreeSet<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub advisory_threshold: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub advisory_hysteresis: Option<f64>,
}

impl SpeciesSpec {
    /// A spec with the default mutation kernel, no availability tags and
    /// derived advisory thresholds.
    pub fn new(
        species_id: impl Into<String>,
        name: impl Into<String>,
        base_price: u64,
        (min_length, max_length): (f64, f64),
        population_cap: usize,
        initial_count: usize,
    ) -> Self {
        Self {
            species_id: SpeciesId(species_id.into()),
            name: name.into(),
            base_price,
            min_length,
            max_length,
            population_cap,
            initial_count,
            mutation_sd: default_mutation_sd(),
            mutation_prob: default_mutation_prob(),
            availability_tags: BTreeSet::new(),
            advisory_threshold: None,
            advisory_hysteresis: None,
        }
    }

    pub fn length_range(&self) -> f64 {
        self.max_length - self.min_length
    }

    /// Mean length strictly below which the scientist's advisory activates.
    pub fn advisory_threshold(&self) -> f64 {
        self.advisory_threshold.unwrap_or(self.min_length + 0.4 * self.length_range())
    }

    /// Extra margin above the threshold the mean must reach to clear an
    /// active advisory.
    pub fn advisory_hysteresis(&self) -> f64 {
        self.advisory_hysteresis.unwrap_or(0.05 * self.length_range())
    }

    /// True when the species can bite under the given context tags.
    pub fn is_available(&self, context: &BTreeSet<String>) -> bool {
        self.availability_tags.is_empty() || !self.availability_tags.is_disjoint(context)
    }

    pub fn clamp_length(&self, length: f64) -> f64 {
        if length > self.max_length {
            self.max_length
        } else if length < self.min_length {
            self.min_length
        } else {
            length
        }
    }

    pub fn validate(&self) -> Result<()> {
        let id = &self.species_id;
        let fail = |msg: String| Err(FisheryError::Config(format!("species `{id}`: {msg}")));
        if id.0.is_empty() {
            return Err(FisheryError::Config("species_id must not be empty".into()));
        }
        if !(self.min_length.is_finite() && self.max_length.is_finite()) {
            return fail("length bounds must be finite".into());
        }
        if self.min_length <= 0.0 {
            return fail(format!("min_length {} must be > 0", self.min_length));
        }
        if self.min_length >= self.max_length {
            return fail(format!(
                "min_length {} must be below max_length {}",
                self.min_length, self.max_length
            ));
        }
        if self.population_cap == 0 {
            return fail("population_cap must be at least 1".into());
        }
        if self.initial_count == 0 || self.initial_count > self.population_cap {
            return fail(format!(
                "initial_count {} must be in 1..={}",
                self.initial_count, self.population_cap
            ));
        }
        if !(self.mutation_sd.is_finite() && self.mutation_sd >= 0.0) {
            return fail(format!("mutation_sd {} must be >= 0", self.mutation_sd));
        }
        if !(0.0..=1.0).contains(&self.mutation_prob) {
            return fail(format!("mutation_prob {} must be in [0, 1]", self.mutation_prob));
        }
        let threshold = self.advisory_threshold();
        if !(self.min_length..=self.max_length).contains(&threshold) {
            return fail(format!(
                "advisory_threshold {threshold} must lie within [{}, {}]",
                self.min_length, self.max_length
            ));
        }
        let hysteresis = self.advisory_hysteresis();
        if !(hysteresis.is_finite() && hysteresis >= 0.0) {
            return fail(format!("advisory_hysteresis {hysteresis} must be >= 0"));
        }
        Ok(())
    }
}

fn default_price_divisor() -> f64 {
    8.0
}

fn default_daily_keep_limit() -> u32 {
    10
}

/// Pricing and harvest-limit knobs shared by every species.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EconomyParams {
    #[serde(default = "default_price_divisor")]
    pub price_divisor: f64,
    #[serde(default = "default_daily_keep_limit")]
    pub daily_keep_limit: u32,
}

impl Default for EconomyParams {
    fn default() -> Self {
        Self { price_divisor: default_price_divisor(), daily_keep_limit: default_daily_keep_limit() }
    }
}

impl EconomyParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.price_divisor.is_finite() && self.price_divisor > 0.0) {
            return Err(FisheryError::Config(format!("price_divisor {} must be > 0", self.price_divisor)));
        }
        if self.daily_keep_limit == 0 {
            return Err(FisheryError::Config("daily_keep_limit must be at least 1".into()));
        }
        Ok(())
    }
}
