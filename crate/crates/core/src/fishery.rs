//! The evolving population substrate.

use std::collections::{BTreeSet, HashSet};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::advisory::{next_transition, AdvisoryTransition, Transition};
use crate::error::{FisheryError, Result};
use crate::fish::{quantize_length, Fish, FishId};
use crate::mutation::mutate_length;
use crate::rng::SimRng;
use crate::species::{SpeciesId, SpeciesSpec};
use crate::stats::LengthStats;

fn one() -> u32 {
    1
}

/// How many reproduction events happen at a day boundary.
///
/// Species with no living fish never receive births in any mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case", deny_unknown_fields)]
pub enum RegrowthMode {
    /// `births_per_day` births in total. Each parent is drawn uniformly from
    /// the pooled fish of every species still below its cap.
    Pooled {
        #[serde(default = "one")]
        births_per_day: u32,
    },
    /// `births_per_day` rounds; each round gives every under-cap species one
    /// birth from a parent drawn within that species.
    PerSpecies {
        #[serde(default = "one")]
        births_per_day: u32,
    },
    /// Repeat per-species single births until every species is at its cap
    /// or extinct.
    RefillToCap,
}

impl Default for RegrowthMode {
    fn default() -> Self {
        RegrowthMode::Pooled { births_per_day: 1 }
    }
}

impl RegrowthMode {
    pub fn validate(&self) -> Result<()> {
        match *self {
            RegrowthMode::Pooled { births_per_day } | RegrowthMode::PerSpecies { births_per_day }
                if births_per_day == 0 =>
            {
                Err(FisheryError::Config("births_per_day must be at least 1".into()))
            }
            _ => Ok(()),
        }
    }
}

/// One species' spec, its living fish (in insertion order) and its advisory flag.
#[derive(Debug, Clone, PartialEq)]
pub struct SpeciesPopulation {
    pub(crate) spec: SpeciesSpec,
    pub(crate) fish: Vec<Fish>,
    pub(crate) advisory_active: bool,
}

impl SpeciesPopulation {
    pub fn spec(&self) -> &SpeciesSpec {
        &self.spec
    }

    pub fn fish(&self) -> &[Fish] {
        &self.fish
    }

    pub fn len(&self) -> usize {
        self.fish.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fish.is_empty()
    }

    pub fn is_below_cap(&self) -> bool {
        self.fish.len() < self.spec.population_cap
    }

    pub fn advisory_active(&self) -> bool {
        self.advisory_active
    }

    pub fn stats(&self) -> LengthStats {
        LengthStats::from_lengths(self.fish.iter().map(|f| f.length))
    }
}

/// Per-species living populations, advisory status, the day counter and the
/// simulation's generator.
///
/// All mutation goes through `&mut self`; a state is a plain value that can
/// be moved to another thread, and distinct states are fully independent.
#[derive(Debug, Clone, PartialEq)]
pub struct FisheryState {
    pub(crate) species: Vec<SpeciesPopulation>,
    pub(crate) rng: SimRng,
    pub(crate) day: u64,
    pub(crate) next_fish_id: u64,
}

pub fn validate_specs(specs: &[SpeciesSpec]) -> Result<()> {
    if specs.is_empty() {
        return Err(FisheryError::Config("at least one species is required".into()));
    }
    let mut seen = HashSet::new();
    for spec in specs {
        spec.validate()?;
        if !seen.insert(&spec.species_id) {
            return Err(FisheryError::Config(format!("duplicate species_id `{}`", spec.species_id)));
        }
    }
    Ok(())
}

impl FisheryState {
    /// Seed a fishery: each species gets `initial_count` fish with lengths
    /// uniform on its bounds, drawn in spec order.
    pub fn new(specs: Vec<SpeciesSpec>, seed: u64) -> Result<Self> {
        validate_specs(&specs)?;
        let mut rng = SimRng::from_seed(seed);
        let mut next_fish_id = 0;
        let species = specs
            .into_iter()
            .map(|spec| {
                let fish = (0..spec.initial_count)
                    .map(|_| {
                        let raw = rng.random_range(spec.min_length..=spec.max_length);
                        let id = FishId(next_fish_id);
                        next_fish_id += 1;
                        Fish {
                            id,
                            species: spec.species_id.clone(),
                            length: spec.clamp_length(quantize_length(raw)),
                        }
                    })
                    .collect();
                SpeciesPopulation { spec, fish, advisory_active: false }
            })
            .collect();
        Ok(Self { species, rng, day: 0, next_fish_id })
    }

    /// Build a fishery with explicit starting lengths (one list per spec, in
    /// spec order). `initial_count` is ignored; lengths must respect bounds
    /// and caps.
    pub fn with_lengths(specs: Vec<SpeciesSpec>, lengths: Vec<Vec<f64>>, seed: u64) -> Result<Self> {
        validate_specs(&specs)?;
        if specs.len() != lengths.len() {
            return Err(FisheryError::Config(format!(
                "{} length lists given for {} species",
                lengths.len(),
                specs.len()
            )));
        }
        let mut next_fish_id = 0;
        let mut species = Vec::with_capacity(specs.len());
        for (spec, lens) in specs.into_iter().zip(lengths) {
            if lens.len() > spec.population_cap {
                return Err(FisheryError::Config(format!(
                    "species `{}`: {} fish exceed cap {}",
                    spec.species_id,
                    lens.len(),
                    spec.population_cap
                )));
            }
            let mut fish = Vec::with_capacity(lens.len());
            for length in lens {
                if !(spec.min_length..=spec.max_length).contains(&length) {
                    return Err(FisheryError::Config(format!(
                        "species `{}`: length {length} outside [{}, {}]",
                        spec.species_id, spec.min_length, spec.max_length
                    )));
                }
                fish.push(Fish {
                    id: FishId(next_fish_id),
                    species: spec.species_id.clone(),
                    length: spec.clamp_length(quantize_length(length)),
                });
                next_fish_id += 1;
            }
            species.push(SpeciesPopulation { spec, fish, advisory_active: false });
        }
        Ok(Self { species, rng: SimRng::from_seed(seed), day: 0, next_fish_id })
    }

    pub fn day(&self) -> u64 {
        self.day
    }

    pub fn advance_day(&mut self) {
        self.day += 1;
    }

    pub fn species(&self) -> &[SpeciesPopulation] {
        &self.species
    }

    pub fn specs(&self) -> impl Iterator<Item = &SpeciesSpec> {
        self.species.iter().map(|p| &p.spec)
    }

    pub fn population(&self, id: &SpeciesId) -> Result<&SpeciesPopulation> {
        self.species
            .iter()
            .find(|p| &p.spec.species_id == id)
            .ok_or_else(|| FisheryError::UnknownSpecies(id.clone()))
    }

    pub fn spec(&self, id: &SpeciesId) -> Result<&SpeciesSpec> {
        self.population(id).map(|p| &p.spec)
    }

    pub fn total_fish(&self) -> usize {
        self.species.iter().map(|p| p.fish.len()).sum()
    }

    pub fn fish(&self) -> impl Iterator<Item = &Fish> {
        self.species.iter().flat_map(|p| p.fish.iter())
    }

    pub fn contains(&self, id: FishId) -> bool {
        self.fish().any(|f| f.id == id)
    }

    /// The next id that will be assigned; every id below it has been used.
    pub fn next_fish_id(&self) -> FishId {
        FishId(self.next_fish_id)
    }

    pub fn rng_mut(&mut self) -> &mut SimRng {
        &mut self.rng
    }

    pub fn species_stats(&self, id: &SpeciesId) -> Result<LengthStats> {
        self.population(id).map(SpeciesPopulation::stats)
    }

    fn species_index(&self, id: &SpeciesId) -> Result<usize> {
        self.species
            .iter()
            .position(|p| &p.spec.species_id == id)
            .ok_or_else(|| FisheryError::UnknownSpecies(id.clone()))
    }

    /// Pick a fish uniformly among every individual of every species available
    /// under `context`. The fish stays in the water; `None` means no bite.
    pub fn sample_catch(&mut self, context: &BTreeSet<String>) -> Option<Fish> {
        let eligible = |p: &&SpeciesPopulation| p.spec.is_available(context);
        let total: usize = self.species.iter().filter(eligible).map(|p| p.fish.len()).sum();
        if total == 0 {
            return None;
        }
        let mut pick = self.rng.random_range(0..total);
        for pop in self.species.iter().filter(eligible) {
            if pick < pop.fish.len() {
                return Some(pop.fish[pick].clone());
            }
            pick -= pop.fish.len();
        }
        unreachable!("pick index is below the eligible total")
    }

    pub fn remove_fish(&mut self, id: FishId) -> Result<Fish> {
        for pop in &mut self.species {
            if let Some(pos) = pop.fish.iter().position(|f| f.id == id) {
                return Ok(pop.fish.remove(pos));
            }
        }
        Err(FisheryError::NotInPopulation(id))
    }

    /// Put a caught fish back, unchanged, at the end of its population.
    pub fn return_fish(&mut self, fish: Fish) -> Result<()> {
        let idx = self.species_index(&fish.species)?;
        if fish.id.0 >= self.next_fish_id {
            return Err(FisheryError::ForeignFish(fish.id));
        }
        if self.contains(fish.id) {
            return Err(FisheryError::DuplicateFish(fish.id));
        }
        let pop = &mut self.species[idx];
        if !pop.is_below_cap() {
            return Err(FisheryError::CapExceeded(fish.species));
        }
        debug_assert!((pop.spec.min_length..=pop.spec.max_length).contains(&fish.length));
        pop.fish.push(fish);
        Ok(())
    }

    fn give_birth(&mut self, species_idx: usize, parent_pos: usize) -> FishId {
        let id = FishId(self.next_fish_id);
        self.next_fish_id += 1;
        let pop = &mut self.species[species_idx];
        let parent_length = pop.fish[parent_pos].length;
        let length = mutate_length(parent_length, &pop.spec, &mut self.rng);
        pop.fish.push(Fish { id, species: pop.spec.species_id.clone(), length });
        id
    }

    fn birth_within(&mut self, species_idx: usize) -> FishId {
        let parent = self.rng.random_range(0..self.species[species_idx].fish.len());
        self.give_birth(species_idx, parent)
    }

    fn can_grow(pop: &SpeciesPopulation) -> bool {
        pop.is_below_cap() && !pop.fish.is_empty()
    }

    /// Run the day-boundary reproduction step and return the ids of the newborns.
    pub fn reproduce_daily(&mut self, mode: RegrowthMode) -> Vec<FishId> {
        let mut births = Vec::new();
        match mode {
            RegrowthMode::Pooled { births_per_day } => {
                for _ in 0..births_per_day {
                    let pool: usize =
                        self.species.iter().filter(|p| Self::can_grow(p)).map(|p| p.fish.len()).sum();
                    if pool == 0 {
                        break;
                    }
                    let mut pick = self.rng.random_range(0..pool);
                    let (idx, pos) = self
                        .species
                        .iter()
                        .enumerate()
                        .filter(|(_, p)| Self::can_grow(p))
                        .find_map(|(i, p)| {
                            if pick < p.fish.len() {
                                Some((i, pick))
                            } else {
                                pick -= p.fish.len();
                                None
                            }
                        })
                        .expect("pick index is below the pool size");
                    births.push(self.give_birth(idx, pos));
                }
            }
            RegrowthMode::PerSpecies { births_per_day } => {
                for _ in 0..births_per_day {
                    for idx in 0..self.species.len() {
                        if Self::can_grow(&self.species[idx]) {
                            births.push(self.birth_within(idx));
                        }
                    }
                }
            }
            RegrowthMode::RefillToCap => loop {
                let before = births.len();
                for idx in 0..self.species.len() {
                    if Self::can_grow(&self.species[idx]) {
                        births.push(self.birth_within(idx));
                    }
                }
                if births.len() == before {
                    break;
                }
            },
        }
        births
    }

    /// Update advisory flags from current mean lengths. Empty species are
    /// skipped; each species changes state at most once per call.
    pub fn check_advisories(&mut self) -> Vec<AdvisoryTransition> {
        let mut transitions = Vec::new();
        for pop in &mut self.species {
            let Some(mean) = pop.stats().mean else { continue };
            let next = next_transition(
                pop.advisory_active,
                mean,
                pop.spec.advisory_threshold(),
                pop.spec.advisory_hysteresis(),
            );
            if let Some(transition) = next {
                pop.advisory_active = transition == Transition::Activated;
                transitions.push(AdvisoryTransition { species_id: pop.spec.species_id.clone(), transition });
            }
        }
        transitions
    }
}
