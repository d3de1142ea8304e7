//! Population-decline advisories and the scientist's letter.

use serde::{Deserialize, Serialize};

use crate::species::SpeciesId;

pub const DEFAULT_SENDER: &str = "Demetrius";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Transition {
    Activated,
    Cleared,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdvisoryTransition {
    pub species_id: SpeciesId,
    pub transition: Transition,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdvisoryLetter {
    pub species_id: SpeciesId,
    pub day: u64,
    pub body: String,
}

/// Hysteresis automaton for one species. Activates when the mean drops
/// strictly below `threshold`; clears once it climbs back to at least
/// `threshold + hysteresis`.
pub fn next_transition(active: bool, mean: f64, threshold: f64, hysteresis: f64) -> Option<Transition> {
    if !active && mean < threshold {
        Some(Transition::Activated)
    } else if active && mean >= threshold + hysteresis {
        Some(Transition::Cleared)
    } else {
        None
    }
}

pub fn render_letter(player_name: &str, species_name: &str, sender: &str) -> String {
    format!(
        "Dear {player_name}, I was conducting a field study on {species_name} the other day, \
         and I discovered that the population is in decline. To prevent a fishery collapse, \
         please release any large {species_name} you catch until the population is stable \
         again. -{sender}"
    )
}
