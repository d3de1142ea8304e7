//! Persistent, evolving fish populations.
//!
//! A [`FisheryState`] holds one living population per species. Casting picks a
//! fish uniformly from every eligible individual, the angler keeps or releases
//! it, and at each day boundary survivors reproduce asexually with a normally
//! distributed length mutation clamped to the species bounds. Sale prices grow
//! with length, so keeping the longest fish is the profitable strategy and the
//! population drifts smaller under it.

pub mod advisory;
pub mod error;
pub mod fish;
pub mod fishery;
pub mod mutation;
pub mod policy;
pub mod price;
pub mod rng;
pub mod snapshot;
pub mod species;
pub mod stats;

pub use advisory::{render_letter, AdvisoryLetter, AdvisoryTransition, Transition, DEFAULT_SENDER};
pub use error::{FisheryError, Result};
pub use fish::{quantize_length, Fish, FishId};
pub use fishery::{validate_specs, FisheryState, RegrowthMode, SpeciesPopulation};
pub use mutation::{mutate_length, Mutation};
pub use policy::{Decision, Observation, PolicySpec, ThresholdMode};
pub use price::sale_price;
pub use rng::{RngState, SimRng};
pub use species::{EconomyParams, SpeciesId, SpeciesSpec};
pub use stats::LengthStats;
