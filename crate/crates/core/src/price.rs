use crate::fish::Fish;
use crate::species::{EconomyParams, SpeciesSpec};

/// Sale value of a fish: the species' base price plus a length bonus of
/// `floor(length / price_divisor)` whole money units.
pub fn sale_price(fish: &Fish, spec: &SpeciesSpec, econ: &EconomyParams) -> u64 {
    debug_assert_eq!(fish.species, spec.species_id);
    spec.base_price + length_bonus(fish.length, econ.price_divisor)
}

pub fn length_bonus(length: f64, divisor: f64) -> u64 {
    (length / divisor).floor().max(0.0) as u64
}
