use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use fishery_core::{validate_specs, EconomyParams, RegrowthMode, SpeciesSpec};
use serde::{Deserialize, Serialize};

use crate::error::{SessionError, SessionResult};

/// Starting conditions for a new game.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Preset {
    #[serde(default)]
    pub description: String,
    pub specs: Vec<SpeciesSpec>,
    #[serde(default)]
    pub econ: EconomyParams,
    /// Sessions refill to cap by default so a solo player sees both decline
    /// and recovery within a short game.
    #[serde(default = "refill")]
    pub regrowth: RegrowthMode,
    #[serde(default)]
    pub context: BTreeSet<String>,
}

fn refill() -> RegrowthMode {
    RegrowthMode::RefillToCap
}

impl Preset {
    pub fn validate(&self) -> SessionResult<()> {
        let invalid = |e: fishery_core::FisheryError| SessionError::InvalidConfig(e.to_string());
        validate_specs(&self.specs).map_err(invalid)?;
        self.econ.validate().map_err(invalid)?;
        self.regrowth.validate().map_err(invalid)
    }
}

pub const BUILTIN_PRESETS: &str = include_str!("../configs/presets.json");

#[derive(Debug, Clone, PartialEq)]
pub struct PresetCatalog(BTreeMap<String, Preset>);

impl PresetCatalog {
    pub fn from_json(text: &str) -> SessionResult<Self> {
        let map: BTreeMap<String, Preset> =
            serde_json::from_str(text).map_err(|e| SessionError::InvalidConfig(e.to_string()))?;
        for (name, preset) in &map {
            preset.validate().map_err(|e| SessionError::InvalidConfig(format!("preset `{name}`: {e}")))?;
        }
        Ok(Self(map))
    }

    pub fn load(path: &Path) -> SessionResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| SessionError::InvalidConfig(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn builtin() -> Self {
        Self::from_json(BUILTIN_PRESETS).expect("built-in presets are valid")
    }

    pub fn get(&self, name: &str) -> SessionResult<&Preset> {
        self.0.get(name).ok_or_else(|| SessionError::NotFound(format!("preset `{name}`")))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.0.keys().map(String::as_str)
    }
}

impl Default for PresetCatalog {
    fn default() -> Self {
        Self::builtin()
    }
}
