//! Response shapes. Every number a client shows comes from one of these.

use fishery_core::{AdvisoryLetter, FishId, SpeciesId};
use serde::{Deserialize, Serialize};

use crate::session::Phase;

/// Lengths are shown to players to one decimal place.
pub fn display_length(length: f64) -> f64 {
    (length * 10.0).round() / 10.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InventoryItem {
    pub fish_id: FishId,
    pub species_id: SpeciesId,
    pub species_name: String,
    pub length: f64,
    pub price: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatchView {
    pub fish_id: FishId,
    pub species_id: SpeciesId,
    pub species_name: String,
    pub length: f64,
    pub price: u64,
    pub kept_today: u32,
    pub limit: u32,
    pub advisory_active: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpeciesStatsView {
    pub species_id: SpeciesId,
    pub name: String,
    pub count: usize,
    pub mean: Option<f64>,
    pub sd: Option<f64>,
    pub min: Option<f64>,
    pub max: Option<f64>,
    pub advisory_threshold: f64,
    pub advisory_active: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateView {
    pub day: u64,
    pub money: u64,
    pub kept_today: u32,
    pub limit: u32,
    pub phase: Phase,
    pub inventory: Vec<InventoryItem>,
    pub pending: Option<CatchView>,
    pub unread_mail: usize,
    /// Population statistics, present only in researcher mode.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stats: Option<Vec<SpeciesStatsView>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EndDayView {
    pub state: StateView,
    pub new_mail: Vec<AdvisoryLetter>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MailView {
    pub letters: Vec<AdvisoryLetter>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsView {
    pub day: u64,
    pub species: Vec<SpeciesStatsView>,
}
