use fishery_core::{FishId, LengthStats, SpeciesId, Transition};
use serde::{Deserialize, Serialize};

use crate::config::ExperimentConfig;
use crate::trend::TrendTest;

/// End-of-day view of one species plus that day's harvest of it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpeciesDay {
    pub species_id: SpeciesId,
    pub stats: LengthStats,
    pub kept: u32,
    pub released: u32,
    pub money: u64,
    pub advisory_active: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SoldFish {
    pub id: FishId,
    pub species_id: SpeciesId,
    pub length: f64,
    pub price: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DayRecord {
    pub day: u64,
    pub births: usize,
    pub casts: u32,
    pub no_bites: u32,
    pub fish_kept: u32,
    pub fish_released: u32,
    pub money_earned: u64,
    pub advisories_activated: Vec<SpeciesId>,
    pub advisories_cleared: Vec<SpeciesId>,
    pub species: Vec<SpeciesDay>,
    pub sold: Vec<SoldFish>,
}

impl DayRecord {
    pub fn bites(&self) -> u32 {
        self.casts - self.no_bites
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdvisoryEvent {
    pub day: u64,
    pub species_id: SpeciesId,
    pub transition: Transition,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpeciesSummary {
    pub species_id: SpeciesId,
    pub initial_count: usize,
    pub final_count: usize,
    pub initial_mean: Option<f64>,
    pub final_mean: Option<f64>,
    /// Day at whose end the species was first observed with no fish.
    pub extinct_on_day: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedSummary {
    pub seed: u64,
    pub money_total: u64,
    pub fish_kept: u64,
    pub fish_released: u64,
    pub no_bites: u64,
    pub births: u64,
    pub species: Vec<SpeciesSummary>,
    pub advisory_events: Vec<AdvisoryEvent>,
}

/// Complete trajectory of one seed.
#[derive(Debug, Clone, PartialEq)]
pub struct SeedRun {
    pub seed: u64,
    /// Per-species statistics before the first day.
    pub initial: Vec<(SpeciesId, LengthStats)>,
    pub days: Vec<DayRecord>,
    pub summary: SeedSummary,
}

impl SeedRun {
    /// `(day index, mean length)` points for one species, starting with the
    /// initial population at index 0 and skipping days where it was empty.
    pub fn mean_series(&self, species: &SpeciesId) -> Vec<(f64, f64)> {
        let initial =
            self.initial.iter().find(|(id, _)| id == species).and_then(|(_, s)| s.mean).map(|m| (0.0, m));
        let days = self.days.iter().filter_map(|d| {
            d.species
                .iter()
                .find(|s| &s.species_id == species)
                .and_then(|s| s.stats.mean)
                .map(|m| ((d.day + 1) as f64, m))
        });
        initial.into_iter().chain(days).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpeciesAggregate {
    pub species_id: SpeciesId,
    pub seeds_declined: usize,
    pub seeds_compared: usize,
    pub median_decline: Option<f64>,
    pub mean_initial: Option<f64>,
    pub mean_final: Option<f64>,
    pub extinctions: usize,
    pub slope_test: Option<TrendTest>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub seeds: usize,
    pub money_total: u64,
    pub fish_kept: u64,
    pub bites: u64,
    /// Kept fish per successful bite over all seeds.
    pub keep_rate: Option<f64>,
    pub species: Vec<SpeciesAggregate>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSummary {
    pub schema_version: u32,
    pub config: ExperimentConfig,
    pub seeds: Vec<SeedSummary>,
    pub aggregate: Aggregate,
}
