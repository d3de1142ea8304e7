use std::collections::BTreeSet;

use fishery_core::{
    sale_price, Decision, EconomyParams, FisheryState, Observation, PolicySpec, RegrowthMode, Transition,
};
use rayon::prelude::*;

use crate::config::ExperimentConfig;
use crate::error::Result;
use crate::record::{
    AdvisoryEvent, Aggregate, DayRecord, ExperimentSummary, SeedRun, SeedSummary, SoldFish, SpeciesAggregate,
    SpeciesDay, SpeciesSummary,
};
use crate::trend::{ols_slope, slope_t_test};

/// Everything a simulated day needs besides the fishery itself.
#[derive(Debug, Clone, Copy)]
pub struct DayParams<'a> {
    pub policy: &'a PolicySpec,
    pub econ: &'a EconomyParams,
    pub regrowth: RegrowthMode,
    pub casts_per_day: u32,
    pub context: &'a BTreeSet<String>,
}

impl<'a> DayParams<'a> {
    pub fn from_config(config: &'a ExperimentConfig) -> Self {
        Self {
            policy: &config.policy,
            econ: &config.econ,
            regrowth: config.regrowth,
            casts_per_day: config.casts_per_day,
            context: &config.context,
        }
    }
}

/// One simulated day: regrowth, advisory check, casting with the policy
/// deciding each catch, selling everything kept, then the day advances.
pub fn run_day(state: &mut FisheryState, params: &DayParams<'_>) -> DayRecord {
    let day = state.day();
    let births = state.reproduce_daily(params.regrowth).len();

    let mut advisories_activated = Vec::new();
    let mut advisories_cleared = Vec::new();
    for t in state.check_advisories() {
        match t.transition {
            Transition::Activated => advisories_activated.push(t.species_id),
            Transition::Cleared => advisories_cleared.push(t.species_id),
        }
    }

    let n_species = state.species().len();
    let mut kept = vec![0u32; n_species];
    let mut released = vec![0u32; n_species];
    let mut money = vec![0u64; n_species];
    let mut inventory = Vec::new();
    let mut kept_today = 0u32;
    let mut no_bites = 0u32;
    let limit = params.econ.daily_keep_limit;

    for _ in 0..params.casts_per_day {
        let Some(fish) = state.sample_catch(params.context) else {
            no_bites += 1;
            continue;
        };
        let idx = state
            .species()
            .iter()
            .position(|p| p.spec().species_id == fish.species)
            .expect("caught fish belongs to a known species");
        let pop = &state.species()[idx];
        let obs = Observation {
            species_id: fish.species.clone(),
            length: fish.length,
            kept_today,
            daily_keep_limit: limit,
            species_mean_length: pop.stats().mean.expect("species holds the caught fish"),
            advisory_active: pop.advisory_active(),
            advisory_threshold: pop.spec().advisory_threshold(),
            day,
        };
        let decision = params.policy.decide(&obs, state.rng_mut());
        if decision == Decision::Keep && kept_today < limit {
            let fish = state.remove_fish(fish.id).expect("sampled fish is in the water");
            kept_today += 1;
            kept[idx] += 1;
            inventory.push((idx, fish));
        } else {
            // the fish never left its population, so a release is a no-op
            released[idx] += 1;
        }
    }

    let sold: Vec<SoldFish> = inventory
        .into_iter()
        .map(|(idx, fish)| {
            let price = sale_price(&fish, state.species()[idx].spec(), params.econ);
            money[idx] += price;
            SoldFish { id: fish.id, species_id: fish.species, length: fish.length, price }
        })
        .collect();

    let species = state
        .species()
        .iter()
        .enumerate()
        .map(|(i, p)| SpeciesDay {
            species_id: p.spec().species_id.clone(),
            stats: p.stats(),
            kept: kept[i],
            released: released[i],
            money: money[i],
            advisory_active: p.advisory_active(),
        })
        .collect();

    state.advance_day();
    DayRecord {
        day,
        births,
        casts: params.casts_per_day,
        no_bites,
        fish_kept: kept_today,
        fish_released: released.iter().sum(),
        money_earned: money.iter().sum(),
        advisories_activated,
        advisories_cleared,
        species,
        sold,
    }
}

/// Full trajectory for one seed.
pub fn run_seed(config: &ExperimentConfig, seed: u64) -> Result<SeedRun> {
    let mut state = FisheryState::new(config.specs.clone(), seed)?;
    let params = DayParams::from_config(config);
    let initial: Vec<_> = state.species().iter().map(|p| (p.spec().species_id.clone(), p.stats())).collect();
    let days: Vec<DayRecord> = (0..config.days).map(|_| run_day(&mut state, &params)).collect();
    let summary = summarize_seed(seed, &initial, &days);
    Ok(SeedRun { seed, initial, days, summary })
}

fn summarize_seed(
    seed: u64,
    initial: &[(fishery_core::SpeciesId, fishery_core::LengthStats)],
    days: &[DayRecord],
) -> SeedSummary {
    let mut advisory_events = Vec::new();
    for d in days {
        for (ids, transition) in
            [(&d.advisories_activated, Transition::Activated), (&d.advisories_cleared, Transition::Cleared)]
        {
            advisory_events.extend(ids.iter().map(|id| AdvisoryEvent {
                day: d.day,
                species_id: id.clone(),
                transition,
            }));
        }
    }
    let species = initial
        .iter()
        .enumerate()
        .map(|(i, (id, stats))| {
            let last = days.last().map(|d| d.species[i].stats).unwrap_or(*stats);
            SpeciesSummary {
                species_id: id.clone(),
                initial_count: stats.count,
                final_count: last.count,
                initial_mean: stats.mean,
                final_mean: last.mean,
                extinct_on_day: days.iter().find(|d| d.species[i].stats.count == 0).map(|d| d.day),
            }
        })
        .collect();
    SeedSummary {
        seed,
        money_total: days.iter().map(|d| d.money_earned).sum(),
        fish_kept: days.iter().map(|d| u64::from(d.fish_kept)).sum(),
        fish_released: days.iter().map(|d| u64::from(d.fish_released)).sum(),
        no_bites: days.iter().map(|d| u64::from(d.no_bites)).sum(),
        births: days.iter().map(|d| d.births as u64).sum(),
        species,
        advisory_events,
    }
}

fn median(mut xs: Vec<f64>) -> Option<f64> {
    if xs.is_empty() {
        return None;
    }
    xs.sort_by(f64::total_cmp);
    let mid = xs.len() / 2;
    Some(if xs.len().is_multiple_of(2) { (xs[mid - 1] + xs[mid]) / 2.0 } else { xs[mid] })
}

fn mean(xs: impl Iterator<Item = f64>) -> Option<f64> {
    let (n, s) = xs.fold((0usize, 0.0), |(n, s), x| (n + 1, s + x));
    (n > 0).then(|| s / n as f64)
}

fn aggregate(config: &ExperimentConfig, runs: &[SeedRun]) -> Aggregate {
    let fish_kept: u64 = runs.iter().map(|r| r.summary.fish_kept).sum();
    let bites: u64 = runs.iter().flat_map(|r| r.days.iter()).map(|d| u64::from(d.bites())).sum();
    let species = config
        .specs
        .iter()
        .enumerate()
        .map(|(i, spec)| {
            let pairs: Vec<(f64, f64)> = runs
                .iter()
                .filter_map(|r| {
                    let s = &r.summary.species[i];
                    Some((s.initial_mean?, s.final_mean?))
                })
                .collect();
            let slopes: Vec<f64> =
                runs.iter().filter_map(|r| ols_slope(&r.mean_series(&spec.species_id))).collect();
            SpeciesAggregate {
                species_id: spec.species_id.clone(),
                seeds_declined: pairs.iter().filter(|(a, b)| b < a).count(),
                seeds_compared: pairs.len(),
                median_decline: median(pairs.iter().map(|(a, b)| a - b).collect()),
                mean_initial: mean(pairs.iter().map(|p| p.0)),
                mean_final: mean(pairs.iter().map(|p| p.1)),
                extinctions: runs.iter().filter(|r| r.summary.species[i].extinct_on_day.is_some()).count(),
                slope_test: slope_t_test(&slopes),
            }
        })
        .collect();
    Aggregate {
        seeds: runs.len(),
        money_total: runs.iter().map(|r| r.summary.money_total).sum(),
        fish_kept,
        bites,
        keep_rate: (bites > 0).then(|| fish_kept as f64 / bites as f64),
        species,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    /// One run per seed, in config order.
    pub runs: Vec<SeedRun>,
    pub summary: ExperimentSummary,
}

/// Run every seed (in parallel) and aggregate. Output is identical to a
/// sequential run: each seed owns its state and results keep config order.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentResult> {
    config.validate()?;
    let runs = config.seeds.par_iter().map(|&seed| run_seed(config, seed)).collect::<Result<Vec<_>>>()?;
    // where the files go is not part of the experiment
    let mut recorded = config.clone();
    recorded.outputs.dir = None;
    let summary = ExperimentSummary {
        schema_version: 1,
        config: recorded,
        seeds: runs.iter().map(|r| r.summary.clone()).collect(),
        aggregate: aggregate(config, &runs),
    };
    Ok(ExperimentResult { runs, summary })
}

#[cfg(test)]
mod tests {
    use super::*;
    use fishery_core::{SpeciesSpec, ThresholdMode};

    fn params<'a>(
        policy: &'a PolicySpec,
        econ: &'a EconomyParams,
        ctx: &'a BTreeSet<String>,
        casts: u32,
    ) -> DayParams<'a> {
        DayParams { policy, econ, regrowth: RegrowthMode::RefillToCap, casts_per_day: casts, context: ctx }
    }

    #[test]
    fn zero_casts_only_regrows() {
        let mut state =
            FisheryState::new(vec![SpeciesSpec::new("a", "A", 5, (12.0, 48.0), 30, 10)], 1).unwrap();
        let econ = EconomyParams::default();
        let ctx = BTreeSet::new();
        let rec = run_day(&mut state, &params(&PolicySpec::KeepAll, &econ, &ctx, 0));
        assert_eq!((rec.fish_kept, rec.money_earned, rec.births), (0, 0, 20));
        assert_eq!(state.total_fish(), 30);
        assert_eq!(state.day(), 1);
    }

    #[test]
    fn keep_all_stops_at_limit() {
        let mut state =
            FisheryState::new(vec![SpeciesSpec::new("a", "A", 5, (12.0, 48.0), 100, 100)], 1).unwrap();
        let econ = EconomyParams::default();
        let ctx = BTreeSet::new();
        let rec = run_day(&mut state, &params(&PolicySpec::KeepAll, &econ, &ctx, 30));
        assert_eq!(rec.fish_kept, 10);
        assert_eq!(rec.fish_released, 20);
        assert_eq!(rec.sold.len(), 10);
        assert_eq!(rec.money_earned, rec.sold.iter().map(|s| s.price).sum::<u64>());
        assert_eq!(state.total_fish(), 90);
    }

    #[test]
    fn no_bites_are_counted() {
        let mut spec = SpeciesSpec::new("a", "A", 5, (12.0, 48.0), 10, 10);
        spec.availability_tags.insert("dawn".into());
        let mut state = FisheryState::new(vec![spec], 1).unwrap();
        let econ = EconomyParams::default();
        let ctx = BTreeSet::new();
        let policy = PolicySpec::GreedyLarge { threshold: ThresholdMode::AboveSpeciesMean };
        let rec = run_day(&mut state, &params(&policy, &econ, &ctx, 7));
        assert_eq!((rec.no_bites, rec.bites()), (7, 0));
    }

    #[test]
    fn median_handles_even_and_odd() {
        assert_eq!(median(vec![3.0, 1.0, 2.0]), Some(2.0));
        assert_eq!(median(vec![4.0, 1.0, 2.0, 3.0]), Some(2.5));
        assert_eq!(median(vec![]), None);
    }
}
