//! Operation-level checks against independent oracles (enumeration,
//! two-pass statistics, chi-squared goodness of fit, Monte Carlo over seeds).

use std::collections::{BTreeSet, HashMap};

use fishery_core::{FishId, FisheryError, FisheryState, LengthStats, RegrowthMode, SpeciesSpec};
use statrs::distribution::{ChiSquared, ContinuousCDF};

fn spec(id: &str, cap: usize, initial: usize, bounds: (f64, f64)) -> SpeciesSpec {
    SpeciesSpec::new(id, id, 10, bounds, cap, initial)
}

fn chi_squared_p(observed: &[u64], expected: &[f64]) -> f64 {
    let stat: f64 = observed.iter().zip(expected).map(|(&o, &e)| (o as f64 - e).powi(2) / e).sum();
    let dist = ChiSquared::new((observed.len() - 1) as f64).unwrap();
    1.0 - dist.cdf(stat)
}

#[test]
fn initial_lengths_center_on_bounds_midpoint() {
    let specs = vec![
        spec("a", 50, 50, (12.0, 48.0)),
        spec("b", 60, 50, (5.0, 9.0)),
        spec("c", 50, 50, (20.0, 100.0)),
    ];
    let seeds = 10_000u64;
    let mut sums = [0.0f64; 3];
    for seed in 0..seeds {
        let state = FisheryState::new(specs.clone(), seed).unwrap();
        for (i, pop) in state.species().iter().enumerate() {
            sums[i] += pop.fish().iter().map(|f| f.length).sum::<f64>();
        }
    }
    let n = (seeds * 50) as f64;
    for (i, s) in specs.iter().enumerate() {
        let mean = sums[i] / n;
        let midpoint = (s.min_length + s.max_length) / 2.0;
        let se = s.length_range() / 12f64.sqrt() / n.sqrt();
        assert!(
            (mean - midpoint).abs() < 3.0 * se,
            "species {}: mean {mean} vs midpoint {midpoint} (se {se})",
            s.species_id
        );
    }
}

#[test]
fn catch_frequency_follows_population_composition() {
    let mut state = FisheryState::with_lengths(
        vec![spec("a", 5, 1, (12.0, 48.0)), spec("b", 5, 1, (12.0, 48.0))],
        vec![vec![13.0, 20.0, 30.0], vec![40.0]],
        99,
    )
    .unwrap();
    let draws = 100_000u64;
    let mut a = 0u64;
    let ctx = BTreeSet::new();
    for _ in 0..draws {
        if state.sample_catch(&ctx).unwrap().species.as_str() == "a" {
            a += 1;
        }
    }
    let p = chi_squared_p(&[a, draws - a], &[0.75 * draws as f64, 0.25 * draws as f64]);
    assert!(p > 0.001, "p = {p}, a = {a}");
    assert_eq!(state.total_fish(), 4);
}

#[test]
fn single_matching_fish_is_always_caught() {
    let mut state =
        FisheryState::with_lengths(vec![spec("a", 5, 1, (12.0, 48.0))], vec![vec![22.5]], 1).unwrap();
    for _ in 0..50 {
        assert_eq!(state.sample_catch(&BTreeSet::new()).unwrap().id, FishId(0));
    }
}

#[test]
fn removing_any_subset_conserves_counts() {
    // exhaustive over every subset of populations with n <= 10
    for n in 1..=10usize {
        let lengths: Vec<f64> = (0..n).map(|i| 12.0 + i as f64).collect();
        for mask in 0u32..(1 << n) {
            let mut state = FisheryState::with_lengths(
                vec![spec("a", 10, 1, (12.0, 48.0)), spec("b", 3, 1, (1.0, 2.0))],
                vec![lengths.clone(), vec![1.5]],
                0,
            )
            .unwrap();
            let mut removed = 0;
            for (i, &len) in lengths.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    let fish = state.remove_fish(FishId(i as u64)).unwrap();
                    assert_eq!(fish.length, len);
                    removed += 1;
                }
            }
            assert_eq!(state.species()[0].len(), n - removed);
            assert_eq!(state.total_fish(), n + 1 - removed);
            for i in 0..n {
                let gone = mask & (1 << i) != 0;
                assert_eq!(state.contains(FishId(i as u64)), !gone);
                if gone {
                    assert_eq!(
                        state.remove_fish(FishId(i as u64)),
                        Err(FisheryError::NotInPopulation(FishId(i as u64)))
                    );
                }
            }
        }
    }
}

fn two_pass(lengths: &[f64]) -> (f64, f64) {
    let n = lengths.len() as f64;
    let mean = lengths.iter().sum::<f64>() / n;
    let var = lengths.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}

#[test]
fn stats_agree_with_two_pass_oracle() {
    for seed in 0..200u64 {
        let count = 1 + (seed as usize * 7) % 150;
        let state = FisheryState::new(vec![spec("a", 200, count, (12.0, 48.0))], seed).unwrap();
        let lengths: Vec<f64> = state.fish().map(|f| f.length).collect();
        let stats = state.species_stats(&"a".into()).unwrap();
        let (mean, sd) = two_pass(&lengths);
        assert_eq!(stats.count, count);
        assert!((stats.mean.unwrap() - mean).abs() < 1e-9);
        assert!((stats.sd.unwrap() - sd).abs() < 1e-9);
        let min = lengths.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = lengths.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert_eq!((stats.min, stats.max), (Some(min), Some(max)));
    }
    assert_eq!(LengthStats::from_lengths([10.0, 20.0]).sd, Some(5.0));
}

/// Exact expected mean after refilling `pop` to `cap` by cloning uniformly
/// chosen members (mutation off), by enumerating every parent sequence.
fn expected_mean_after_refill(pop: &mut Vec<f64>, cap: usize) -> f64 {
    if pop.len() == cap {
        return pop.iter().sum::<f64>() / cap as f64;
    }
    let n = pop.len();
    let mut total = 0.0;
    for i in 0..n {
        pop.push(pop[i]);
        total += expected_mean_after_refill(pop, cap);
        pop.pop();
    }
    total / n as f64
}

#[test]
fn truncating_longest_then_refilling_lowers_expected_mean() {
    let cases: &[&[f64]] = &[
        &[12.0, 20.0, 30.0],
        &[15.0, 15.0, 40.0, 41.0],
        &[12.0, 13.0, 14.0, 15.0, 16.0, 48.0],
        &[30.0, 30.0, 30.0, 29.5, 30.0],
        &[47.0, 12.0],
    ];
    for lengths in cases {
        let n = lengths.len();
        let mean_before = lengths.iter().sum::<f64>() / n as f64;
        for k in 1..n {
            let mut sorted = lengths.to_vec();
            sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
            let survivors = sorted[k..].to_vec();
            let oracle = expected_mean_after_refill(&mut survivors.clone(), n);
            assert!(oracle < mean_before, "{lengths:?} k={k}: {oracle} !< {mean_before}");

            // the implementation's refill must stay in the oracle's support and
            // average to the oracle's expectation
            let runs = 3000;
            let mut acc = 0.0;
            let mut sq = 0.0;
            for seed in 0..runs {
                let mut s = spec("a", n, n, (12.0, 48.0));
                s.mutation_sd = 0.0;
                let mut state = FisheryState::with_lengths(vec![s], vec![lengths.to_vec()], seed).unwrap();
                let mut by_len: Vec<(f64, FishId)> = state.fish().map(|f| (f.length, f.id)).collect();
                by_len.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap().then(a.1.cmp(&b.1)));
                for (_, id) in &by_len[..k] {
                    state.remove_fish(*id).unwrap();
                }
                state.reproduce_daily(RegrowthMode::RefillToCap);
                let after: Vec<f64> = state.fish().map(|f| f.length).collect();
                assert_eq!(after.len(), n);
                assert!(after.iter().all(|l| survivors.contains(l)));
                let m = after.iter().sum::<f64>() / n as f64;
                acc += m;
                sq += m * m;
            }
            let emp = acc / runs as f64;
            let se = ((sq / runs as f64 - emp * emp).max(0.0) / runs as f64).sqrt();
            assert!((emp - oracle).abs() <= 4.0 * se + 1e-9, "{lengths:?} k={k}: {emp} vs {oracle}");
        }
    }
}

#[test]
fn mutation_sd_zero_refill_copies_lengths() {
    let mut s = spec("a", 50, 3, (12.0, 48.0));
    s.mutation_sd = 0.0;
    let mut state = FisheryState::with_lengths(vec![s], vec![vec![14.0, 33.0, 47.0]], 5).unwrap();
    state.reproduce_daily(RegrowthMode::RefillToCap);
    let mut seen: HashMap<u64, usize> = HashMap::new();
    for f in state.fish() {
        *seen.entry((f.length * 10.0) as u64).or_default() += 1;
    }
    assert_eq!(seen.values().sum::<usize>(), 50);
    assert!(seen.keys().all(|k| [140, 330, 470].contains(k)));
}
