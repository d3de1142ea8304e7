//! The game state machine behind one player's session.

use std::collections::BTreeSet;

use fishery_core::snapshot::{six_decimals, FisherySnapshot};
use fishery_core::{
    render_letter, sale_price, AdvisoryLetter, Decision, EconomyParams, Fish, FishId, FisheryState,
    RegrowthMode, SpeciesId, Transition, DEFAULT_SENDER,
};
use serde::{Deserialize, Serialize};

use crate::error::{SessionError, SessionResult};
use crate::presets::Preset;
use crate::view::{
    display_length, CatchView, EndDayView, InventoryItem, MailView, SpeciesStatsView, StateView, StatsView,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    Fishing,
    DayEnded,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MailItem {
    pub letter: AdvisoryLetter,
    pub read: bool,
}

/// Which inventory fish to sell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SellRequest {
    All(AllMarker),
    Ids(Vec<FishId>),
}

/// The literal string `"all"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AllMarker {
    All,
}

impl SellRequest {
    pub fn all() -> Self {
        SellRequest::All(AllMarker::All)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CastOutcome {
    Catch(CatchView),
    NoBite,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SessionState {
    session_id: String,
    player_name: String,
    researcher_mode: bool,
    econ: EconomyParams,
    regrowth: RegrowthMode,
    context: BTreeSet<String>,
    fishery: FisheryState,
    inventory: Vec<Fish>,
    money: u64,
    kept_today: u32,
    pending: Option<Fish>,
    mailbox: Vec<MailItem>,
    phase: Phase,
    births_total: u64,
    sold_total: u64,
}

impl SessionState {
    pub fn new(
        session_id: impl Into<String>,
        preset: &Preset,
        seed: u64,
        player_name: impl Into<String>,
        researcher_mode: bool,
    ) -> SessionResult<Self> {
        preset.validate()?;
        let fishery = FisheryState::new(preset.specs.clone(), seed)
            .map_err(|e| SessionError::InvalidConfig(e.to_string()))?;
        Ok(Self::with_fishery(
            session_id,
            fishery,
            preset.econ,
            preset.regrowth,
            player_name,
            researcher_mode,
        )
        .with_context(preset.context.clone()))
    }

    /// Wrap an existing fishery in a fresh game.
    pub fn with_fishery(
        session_id: impl Into<String>,
        fishery: FisheryState,
        econ: EconomyParams,
        regrowth: RegrowthMode,
        player_name: impl Into<String>,
        researcher_mode: bool,
    ) -> Self {
        Self {
            session_id: session_id.into(),
            player_name: player_name.into(),
            researcher_mode,
            econ,
            regrowth,
            context: BTreeSet::new(),
            fishery,
            inventory: Vec::new(),
            money: 0,
            kept_today: 0,
            pending: None,
            mailbox: Vec::new(),
            phase: Phase::Fishing,
            births_total: 0,
            sold_total: 0,
        }
    }

    pub fn with_context(mut self, context: BTreeSet<String>) -> Self {
        self.context = context;
        self
    }

    pub fn session_id(&self) -> &str {
        &self.session_id
    }

    pub fn researcher_mode(&self) -> bool {
        self.researcher_mode
    }

    pub fn fishery(&self) -> &FisheryState {
        &self.fishery
    }

    pub fn inventory(&self) -> &[Fish] {
        &self.inventory
    }

    pub fn pending(&self) -> Option<&Fish> {
        self.pending.as_ref()
    }

    pub fn money(&self) -> u64 {
        self.money
    }

    pub fn kept_today(&self) -> u32 {
        self.kept_today
    }

    pub fn limit(&self) -> u32 {
        self.econ.daily_keep_limit
    }

    pub fn births_total(&self) -> u64 {
        self.births_total
    }

    pub fn sold_total(&self) -> u64 {
        self.sold_total
    }

    pub fn mailbox(&self) -> &[MailItem] {
        &self.mailbox
    }

    fn price(&self, fish: &Fish) -> u64 {
        let spec = self.fishery.spec(&fish.species).expect("fish species exists");
        sale_price(fish, spec, &self.econ)
    }

    fn species_name(&self, id: &SpeciesId) -> String {
        self.fishery.spec(id).map(|s| s.name.clone()).unwrap_or_default()
    }

    fn catch_view(&self, fish: &Fish) -> CatchView {
        let pop = self.fishery.population(&fish.species).expect("fish species exists");
        CatchView {
            fish_id: fish.id,
            species_id: fish.species.clone(),
            species_name: pop.spec().name.clone(),
            length: display_length(fish.length),
            price: self.price(fish),
            kept_today: self.kept_today,
            limit: self.limit(),
            advisory_active: pop.advisory_active(),
        }
    }

    fn species_stats(&self) -> Vec<SpeciesStatsView> {
        self.fishery
            .species()
            .iter()
            .map(|p| {
                let s = p.stats();
                SpeciesStatsView {
                    species_id: p.spec().species_id.clone(),
                    name: p.spec().name.clone(),
                    count: s.count,
                    mean: s.mean,
                    sd: s.sd,
                    min: s.min,
                    max: s.max,
                    advisory_threshold: p.spec().advisory_threshold(),
                    advisory_active: p.advisory_active(),
                }
            })
            .collect()
    }

    pub fn view(&self) -> StateView {
        StateView {
            day: self.fishery.day(),
            money: self.money,
            kept_today: self.kept_today,
            limit: self.limit(),
            phase: self.phase,
            inventory: self
                .inventory
                .iter()
                .map(|f| InventoryItem {
                    fish_id: f.id,
                    species_id: f.species.clone(),
                    species_name: self.species_name(&f.species),
                    length: display_length(f.length),
                    price: self.price(f),
                })
                .collect(),
            pending: self.pending.as_ref().map(|f| self.catch_view(f)),
            unread_mail: self.mailbox.iter().filter(|m| !m.read).count(),
            stats: self.researcher_mode.then(|| self.species_stats()),
        }
    }

    pub fn stats(&self) -> SessionResult<StatsView> {
        if !self.researcher_mode {
            return Err(SessionError::Forbidden(
                "population statistics are only available in researcher mode".into(),
            ));
        }
        Ok(StatsView { day: self.fishery.day(), species: self.species_stats() })
    }

    /// Every letter, oldest first; marks them all read.
    pub fn read_mail(&mut self) -> MailView {
        for item in &mut self.mailbox {
            item.read = true;
        }
        MailView { letters: self.mailbox.iter().map(|m| m.letter.clone()).collect() }
    }

    fn ensure_fishing(&self) -> SessionResult<()> {
        match self.phase {
            Phase::Fishing => Ok(()),
            Phase::DayEnded => Err(SessionError::DayEnded),
        }
    }

    /// Hook a fish: it leaves the water and waits for a decision.
    pub fn cast(&mut self) -> SessionResult<CastOutcome> {
        self.ensure_fishing()?;
        if self.pending.is_some() {
            return Err(SessionError::PendingDecision);
        }
        let Some(fish) = self.fishery.sample_catch(&self.context) else {
            return Ok(CastOutcome::NoBite);
        };
        let fish = self.fishery.remove_fish(fish.id).expect("sampled fish is in the water");
        let view = self.catch_view(&fish);
        self.pending = Some(fish);
        Ok(CastOutcome::Catch(view))
    }

    /// Keep or release the pending fish. Keeping at the daily limit fails and
    /// leaves the fish on the line.
    pub fn decide(&mut self, decision: Decision) -> SessionResult<StateView> {
        if self.pending.is_none() {
            return Err(SessionError::NoPending);
        }
        match decision {
            Decision::Keep => {
                if self.kept_today >= self.limit() {
                    return Err(SessionError::LimitReached(self.limit()));
                }
                let fish = self.pending.take().expect("checked above");
                self.inventory.push(fish);
                self.kept_today += 1;
            }
            Decision::Release => {
                let fish = self.pending.take().expect("checked above");
                self.fishery.return_fish(fish).expect("a hooked fish always has room to go back");
            }
        }
        Ok(self.view())
    }

    /// Sell inventory fish. All ids are checked before anything is sold.
    pub fn sell(&mut self, request: &SellRequest) -> SessionResult<StateView> {
        let ids: Vec<FishId> = match request {
            SellRequest::All(_) => self.inventory.iter().map(|f| f.id).collect(),
            SellRequest::Ids(ids) => {
                let mut seen = BTreeSet::new();
                for id in ids {
                    if !seen.insert(*id) || !self.inventory.iter().any(|f| f.id == *id) {
                        return Err(SessionError::NotFound(format!("fish {id} in inventory")));
                    }
                }
                ids.clone()
            }
        };
        let mut earned = 0;
        for id in &ids {
            let pos = self.inventory.iter().position(|f| f.id == *id).expect("validated above");
            let fish = self.inventory.remove(pos);
            earned += self.price(&fish);
        }
        self.money += earned;
        self.sold_total += ids.len() as u64;
        Ok(self.view())
    }

    /// Close the day: regrowth, advisory check (new letters go to the
    /// mailbox), reset the daily count and start the next day.
    pub fn end_day(&mut self) -> SessionResult<EndDayView> {
        self.ensure_fishing()?;
        if self.pending.is_some() {
            return Err(SessionError::PendingDecision);
        }
        self.phase = Phase::DayEnded;
        self.births_total += self.fishery.reproduce_daily(self.regrowth).len() as u64;
        let transitions = self.fishery.check_advisories();
        self.fishery.advance_day();
        let day = self.fishery.day();
        let mut new_mail = Vec::new();
        for t in transitions {
            if t.transition != Transition::Activated {
                continue;
            }
            let letter = AdvisoryLetter {
                body: render_letter(&self.player_name, &self.species_name(&t.species_id), DEFAULT_SENDER),
                species_id: t.species_id,
                day,
            };
            self.mailbox.push(MailItem { letter: letter.clone(), read: false });
            new_mail.push(letter);
        }
        self.kept_today = 0;
        self.phase = Phase::Fishing;
        Ok(EndDayView { state: self.view(), new_mail })
    }

    pub fn snapshot(&self) -> SessionSnapshot {
        SessionSnapshot {
            session_id: self.session_id.clone(),
            player_name: self.player_name.clone(),
            researcher_mode: self.researcher_mode,
            econ: self.econ,
            regrowth: self.regrowth,
            context: self.context.clone(),
            fishery: self.fishery.snapshot(),
            inventory: self.inventory.iter().map(HeldFish::from).collect(),
            money: self.money,
            kept_today: self.kept_today,
            pending: self.pending.as_ref().map(HeldFish::from),
            mailbox: self.mailbox.clone(),
            phase: self.phase,
            births_total: self.births_total,
            sold_total: self.sold_total,
        }
    }

    /// Canonical JSON of the whole session; equal states give equal bytes.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.snapshot()).expect("session snapshot serializes")
    }

    pub fn from_json(text: &str) -> SessionResult<Self> {
        let snap: SessionSnapshot =
            serde_json::from_str(text).map_err(|e| SessionError::Storage(e.to_string()))?;
        Self::restore(snap)
    }

    pub fn restore(snap: SessionSnapshot) -> SessionResult<Self> {
        let storage = |e: fishery_core::FisheryError| SessionError::Storage(e.to_string());
        let fishery = FisheryState::restore(snap.fishery).map_err(storage)?;
        let mut seen = BTreeSet::new();
        let mut held = |h: HeldFish| -> SessionResult<Fish> {
            let spec = fishery.spec(&h.species).map_err(storage)?;
            if !(spec.min_length..=spec.max_length).contains(&h.length)
                || fishery.contains(h.id)
                || h.id >= fishery.next_fish_id()
                || !seen.insert(h.id)
            {
                return Err(SessionError::Storage(format!("held fish {} is inconsistent", h.id)));
            }
            Ok(Fish { id: h.id, species: h.species, length: h.length })
        };
        let inventory = snap.inventory.into_iter().map(&mut held).collect::<SessionResult<Vec<_>>>()?;
        let pending = snap.pending.map(held).transpose()?;
        if snap.kept_today > snap.econ.daily_keep_limit {
            return Err(SessionError::Storage("kept_today exceeds the daily limit".into()));
        }
        Ok(Self {
            session_id: snap.session_id,
            player_name: snap.player_name,
            researcher_mode: snap.researcher_mode,
            econ: snap.econ,
            regrowth: snap.regrowth,
            context: snap.context,
            fishery,
            inventory,
            money: snap.money,
            kept_today: snap.kept_today,
            pending,
            mailbox: snap.mailbox,
            phase: snap.phase,
            births_total: snap.births_total,
            sold_total: snap.sold_total,
        })
    }
}

/// A fish outside the water (inventory or on the line), as persisted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeldFish {
    pub id: FishId,
    pub species: SpeciesId,
    #[serde(serialize_with = "six_decimals")]
    pub length: f64,
}

impl From<&Fish> for HeldFish {
    fn from(f: &Fish) -> Self {
        Self { id: f.id, species: f.species.clone(), length: f.length }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SessionSnapshot {
    pub session_id: String,
    pub player_name: String,
    pub researcher_mode: bool,
    pub econ: EconomyParams,
    pub regrowth: RegrowthMode,
    pub context: BTreeSet<String>,
    pub fishery: FisherySnapshot,
    pub inventory: Vec<HeldFish>,
    pub money: u64,
    pub kept_today: u32,
    pub pending: Option<HeldFish>,
    pub mailbox: Vec<MailItem>,
    pub phase: Phase,
    pub births_total: u64,
    pub sold_total: u64,
}
