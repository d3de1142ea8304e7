//! Simulated anglers: keep/release rules applied to each catch as it happens.
//!
//! Every rule is a pure function of the [`Observation`] (plus an explicit
//! generator for the random rule). Rules never ask to keep a fish once the
//! daily limit is reached, and drivers must enforce the limit regardless.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{FisheryError, Result};
use crate::species::SpeciesId;

/// What an angler can see when deciding about one catch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Observation {
    pub species_id: SpeciesId,
    pub length: f64,
    pub kept_today: u32,
    pub daily_keep_limit: u32,
    /// Mean length of the caught fish's species, the caught fish included.
    pub species_mean_length: f64,
    pub advisory_active: bool,
    pub advisory_threshold: f64,
    pub day: u64,
}

impl Observation {
    pub fn under_limit(&self) -> bool {
        self.kept_today < self.daily_keep_limit
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    Keep,
    Release,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case", deny_unknown_fields)]
pub enum ThresholdMode {
    Fixed {
        inches: f64,
    },
    #[serde(rename = "species_mean")]
    AboveSpeciesMean,
}

/// Data-driven policy selection, e.g.
/// `{"policy": "greedy_large", "threshold": {"mode": "species_mean"}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "policy", rename_all = "snake_case", deny_unknown_fields)]
pub enum PolicySpec {
    KeepAll,
    GreedyLarge { threshold: ThresholdMode },
    Random { p_keep: f64 },
    AdvisoryCompliant { inner: Box<PolicySpec> },
}

pub fn keep_all(obs: &Observation) -> Decision {
    if obs.under_limit() {
        Decision::Keep
    } else {
        Decision::Release
    }
}

/// Online stand-in for "keep the longest fish of the day".
pub fn greedy_large(obs: &Observation, threshold: ThresholdMode) -> Decision {
    let cutoff = match threshold {
        ThresholdMode::Fixed { inches } => inches,
        ThresholdMode::AboveSpeciesMean => obs.species_mean_length,
    };
    if obs.under_limit() && obs.length >= cutoff {
        Decision::Keep
    } else {
        Decision::Release
    }
}

/// Non-directional control: keep with probability `p_keep`. Draws from `rng`
/// only while under the limit.
pub fn random<R: Rng + ?Sized>(obs: &Observation, p_keep: f64, rng: &mut R) -> Decision {
    if obs.under_limit() && rng.random::<f64>() < p_keep {
        Decision::Keep
    } else {
        Decision::Release
    }
}

/// Follow the scientist's advice: while the species' advisory is active,
/// release every fish at or above its advisory threshold; otherwise defer.
pub fn advisory_compliant(obs: &Observation, inner: impl FnOnce(&Observation) -> Decision) -> Decision {
    if obs.advisory_active && obs.length >= obs.advisory_threshold {
        Decision::Release
    } else {
        inner(obs)
    }
}

impl PolicySpec {
    pub fn decide<R: Rng + ?Sized>(&self, obs: &Observation, rng: &mut R) -> Decision {
        match self {
            PolicySpec::KeepAll => keep_all(obs),
            PolicySpec::GreedyLarge { threshold } => greedy_large(obs, *threshold),
            PolicySpec::Random { p_keep } => random(obs, *p_keep, rng),
            PolicySpec::AdvisoryCompliant { inner } => advisory_compliant(obs, |o| inner.decide(o, rng)),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            PolicySpec::Random { p_keep } if !(0.0..=1.0).contains(p_keep) => {
                Err(FisheryError::Config(format!("p_keep {p_keep} must be in [0, 1]")))
            }
            PolicySpec::GreedyLarge { threshold: ThresholdMode::Fixed { inches } } if !inches.is_finite() => {
                Err(FisheryError::Config("fixed threshold must be finite".into()))
            }
            PolicySpec::AdvisoryCompliant { inner } => inner.validate(),
            _ => Ok(()),
        }
    }
}
