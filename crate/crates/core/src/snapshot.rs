//! Canonical JSON form of a [`FisheryState`].
//!
//! Field order is fixed and fish lengths are written with exactly six
//! decimals, so two states serialize to identical bytes iff they are equal.
//! Lengths live on the micro-inch grid, which makes the text form lossless.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize, Serializer};
use serde_json::value::RawValue;

use crate::error::{FisheryError, Result};
use crate::fish::{quantize_length, Fish, FishId};
use crate::fishery::{validate_specs, FisheryState, SpeciesPopulation};
use crate::rng::{RngState, SimRng};
use crate::species::SpeciesSpec;

/// Serialize an `f64` as a JSON number with six decimals.
pub fn six_decimals<S: Serializer>(value: &f64, serializer: S) -> std::result::Result<S::Ok, S::Error> {
    let raw = RawValue::from_string(format!("{value:.6}")).map_err(serde::ser::Error::custom)?;
    raw.serialize(serializer)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FisherySnapshot {
    pub day: u64,
    pub rng_state: RngState,
    pub next_fish_id: u64,
    pub species: Vec<SpeciesSnapshot>,
    pub advisories: BTreeMap<String, bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpeciesSnapshot {
    pub spec: SpeciesSpec,
    pub fish: Vec<FishSnapshot>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FishSnapshot {
    pub id: u64,
    #[serde(serialize_with = "six_decimals")]
    pub length: f64,
}

impl FisheryState {
    pub fn snapshot(&self) -> FisherySnapshot {
        FisherySnapshot {
            day: self.day,
            rng_state: self.rng.state(),
            next_fish_id: self.next_fish_id,
            species: self
                .species
                .iter()
                .map(|p| SpeciesSnapshot {
                    spec: p.spec.clone(),
                    fish: p.fish.iter().map(|f| FishSnapshot { id: f.id.0, length: f.length }).collect(),
                })
                .collect(),
            advisories: self
                .species
                .iter()
                .map(|p| (p.spec.species_id.0.clone(), p.advisory_active))
                .collect(),
        }
    }

    /// Rebuild a state, checking every invariant a live state maintains.
    pub fn restore(snapshot: FisherySnapshot) -> Result<Self> {
        let bad = |msg: String| Err(FisheryError::Snapshot(msg));
        let specs: Vec<SpeciesSpec> = snapshot.species.iter().map(|s| s.spec.clone()).collect();
        validate_specs(&specs).map_err(|e| FisheryError::Snapshot(e.to_string()))?;
        if snapshot.advisories.len() != specs.len() {
            return bad("advisories must list every species exactly once".into());
        }
        let mut seen = HashSet::new();
        let mut species = Vec::with_capacity(specs.len());
        for s in snapshot.species {
            let id = s.spec.species_id.clone();
            let Some(&advisory_active) = snapshot.advisories.get(&id.0) else {
                return bad(format!("missing advisory flag for `{id}`"));
            };
            if s.fish.len() > s.spec.population_cap {
                return bad(format!("species `{id}` exceeds its cap"));
            }
            let mut fish = Vec::with_capacity(s.fish.len());
            for f in s.fish {
                if f.id >= snapshot.next_fish_id || !seen.insert(f.id) {
                    return bad(format!("fish id {} is duplicated or unissued", f.id));
                }
                let length = quantize_length(f.length);
                if !(s.spec.min_length..=s.spec.max_length).contains(&length) {
                    return bad(format!("fish {} length {length} outside species bounds", f.id));
                }
                fish.push(Fish { id: FishId(f.id), species: id.clone(), length });
            }
            species.push(SpeciesPopulation { spec: s.spec, fish, advisory_active });
        }
        Ok(Self {
            species,
            rng: SimRng::from_state(&snapshot.rng_state)?,
            day: snapshot.day,
            next_fish_id: snapshot.next_fish_id,
        })
    }

    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(&self.snapshot()).expect("snapshot serialization is infallible")
    }

    pub fn from_canonical_json(json: &str) -> Result<Self> {
        let snapshot: FisherySnapshot =
            serde_json::from_str(json).map_err(|e| FisheryError::Snapshot(e.to_string()))?;
        Self::restore(snapshot)
    }
}
