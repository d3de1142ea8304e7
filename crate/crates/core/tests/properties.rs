//! Property tests for the population invariants.

use std::collections::{BTreeMap, BTreeSet};

use fishery_core::{Fish, FishId, FisheryState, RegrowthMode, SpeciesSpec};
use proptest::prelude::*;

fn specs() -> Vec<SpeciesSpec> {
    let mut a = SpeciesSpec::new("a", "A", 10, (12.0, 48.0), 12, 8);
    a.mutation_sd = 6.0;
    let mut b = SpeciesSpec::new("b", "B", 40, (3.0, 5.0), 6, 2);
    b.availability_tags.insert("night".into());
    let c = SpeciesSpec::new("c", "C", 0, (20.0, 21.0), 4, 4);
    vec![a, b, c]
}

fn multiset(state: &FisheryState) -> BTreeMap<FishId, String> {
    state.fish().map(|f| (f.id, format!("{:.6}", f.length))).collect()
}

#[derive(Debug, Clone)]
enum Op {
    Cast { night: bool },
    Keep { night: bool },
    ReturnHeld,
    Regrow(u8),
}

fn op() -> impl Strategy<Value = Op> {
    prop_oneof![
        any::<bool>().prop_map(|night| Op::Cast { night }),
        any::<bool>().prop_map(|night| Op::Keep { night }),
        Just(Op::ReturnHeld),
        (0u8..3).prop_map(Op::Regrow),
    ]
}

fn mode(i: u8) -> RegrowthMode {
    match i {
        0 => RegrowthMode::Pooled { births_per_day: 2 },
        1 => RegrowthMode::PerSpecies { births_per_day: 1 },
        _ => RegrowthMode::RefillToCap,
    }
}

fn ctx(night: bool) -> BTreeSet<String> {
    if night {
        ["night".to_string()].into()
    } else {
        BTreeSet::new()
    }
}

/// Applies one op; returns ids born. `held` plays the role of an inventory.
fn apply(state: &mut FisheryState, held: &mut Vec<Fish>, op: &Op) -> Vec<FishId> {
    match op {
        Op::Cast { night } => {
            if let Some(f) = state.sample_catch(&ctx(*night)) {
                let caught = state.remove_fish(f.id).unwrap();
                state.return_fish(caught).unwrap();
            }
            vec![]
        }
        Op::Keep { night } => {
            if let Some(f) = state.sample_catch(&ctx(*night)) {
                held.push(state.remove_fish(f.id).unwrap());
            }
            vec![]
        }
        Op::ReturnHeld => {
            if let Some(f) = held.pop() {
                // a regrowth may have refilled the slot in the meantime
                if state.return_fish(f.clone()).is_err() {
                    held.push(f);
                }
            }
            vec![]
        }
        Op::Regrow(m) => state.reproduce_daily(mode(*m)),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn catch_and_release_leaves_multiset_unchanged(seed in any::<u64>(), casts in prop::collection::vec(any::<bool>(), 1..40)) {
        let mut state = FisheryState::new(specs(), seed).unwrap();
        let before = multiset(&state);
        for night in casts {
            apply(&mut state, &mut Vec::new(), &Op::Cast { night });
            prop_assert_eq!(&multiset(&state), &before);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn ledger_bounds_and_caps_hold(seed in any::<u64>(), ops in prop::collection::vec(op(), 1..60)) {
        let mut state = FisheryState::new(specs(), seed).unwrap();
        let mut held = Vec::new();
        let mut expected: BTreeSet<FishId> = state.fish().map(|f| f.id).collect();
        let bounds: BTreeMap<String, (f64, f64, usize)> = specs()
            .into_iter()
            .map(|s| (s.species_id.0.clone(), (s.min_length, s.max_length, s.population_cap)))
            .collect();
        for op in &ops {
            for id in apply(&mut state, &mut held, op) {
                prop_assert!(expected.insert(id), "id {} reused", id);
            }
            let mut present: BTreeSet<FishId> = BTreeSet::new();
            for f in state.fish().chain(held.iter()) {
                prop_assert!(present.insert(f.id), "fish {} in two places", f.id);
                let (lo, hi, _) = bounds[f.species.as_str()];
                prop_assert!(lo <= f.length && f.length <= hi);
            }
            prop_assert_eq!(&present, &expected);
            for pop in state.species() {
                prop_assert!(pop.len() <= bounds[pop.spec().species_id.as_str()].2);
            }
        }
    }

    #[test]
    fn identical_inputs_give_identical_trajectories(seed in any::<u64>(), ops in prop::collection::vec(op(), 1..40)) {
        let mut a = FisheryState::new(specs(), seed).unwrap();
        let mut b = FisheryState::new(specs(), seed).unwrap();
        let (mut ha, mut hb) = (Vec::new(), Vec::new());
        for op in &ops {
            apply(&mut a, &mut ha, op);
            apply(&mut b, &mut hb, op);
            prop_assert_eq!(a.to_canonical_json(), b.to_canonical_json());
        }
    }

    #[test]
    fn extinction_is_absorbing(seed in any::<u64>(), modes in prop::collection::vec(0u8..3, 1..20)) {
        let mut state = FisheryState::new(specs(), seed).unwrap();
        let ids: Vec<FishId> = state.species()[2].fish().iter().map(|f| f.id).collect();
        for id in ids {
            state.remove_fish(id).unwrap();
        }
        for m in modes {
            let births = state.reproduce_daily(mode(m));
            prop_assert_eq!(state.species()[2].len(), 0);
            prop_assert!(births.iter().all(|id| state.population(&"a".into()).unwrap().fish().iter().any(|f| f.id == *id)
                || state.population(&"b".into()).unwrap().fish().iter().any(|f| f.id == *id)));
        }
    }
}
