//! In-memory session registry with optional on-disk snapshots.

use std::collections::{BTreeSet, HashMap};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, RwLock};

use fishery_core::{EconomyParams, RegrowthMode, SpeciesSpec};
use serde::{Deserialize, Serialize};

use crate::error::{SessionError, SessionResult};
use crate::presets::{Preset, PresetCatalog};
use crate::session::SessionState;
use crate::view::StateView;

const MAX_NAME_LEN: usize = 64;

/// Body of `POST /api/sessions`. Either `preset` or `specs`, not both; with
/// neither the `default` preset is used.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CreateRequest {
    #[serde(default)]
    pub preset: Option<String>,
    #[serde(default)]
    pub specs: Option<Vec<SpeciesSpec>>,
    #[serde(default)]
    pub econ: Option<EconomyParams>,
    #[serde(default)]
    pub regrowth: Option<RegrowthMode>,
    #[serde(default)]
    pub context: Option<BTreeSet<String>>,
    #[serde(default)]
    pub seed: Option<u64>,
    pub player_name: String,
    #[serde(default)]
    pub researcher_mode: bool,
}

impl CreateRequest {
    pub fn new(player_name: impl Into<String>) -> Self {
        Self { player_name: player_name.into(), ..Self::default() }
    }

    fn resolve(&self, catalog: &PresetCatalog) -> SessionResult<Preset> {
        let mut preset = match (&self.preset, &self.specs) {
            (Some(_), Some(_)) => {
                return Err(SessionError::InvalidRequest("give either `preset` or `specs`, not both".into()))
            }
            (None, Some(specs)) => Preset {
                description: String::new(),
                specs: specs.clone(),
                econ: EconomyParams::default(),
                regrowth: RegrowthMode::RefillToCap,
                context: BTreeSet::new(),
            },
            (name, None) => catalog.get(name.as_deref().unwrap_or("default"))?.clone(),
        };
        if let Some(econ) = self.econ {
            preset.econ = econ;
        }
        if let Some(regrowth) = self.regrowth {
            preset.regrowth = regrowth;
        }
        if let Some(context) = &self.context {
            preset.context = context.clone();
        }
        preset.validate()?;
        Ok(preset)
    }
}

type Shared = Arc<Mutex<SessionState>>;

pub struct SessionStore {
    sessions: RwLock<HashMap<String, Shared>>,
    data_dir: Option<PathBuf>,
    presets: PresetCatalog,
}

impl SessionStore {
    pub fn in_memory(presets: PresetCatalog) -> Self {
        Self { sessions: RwLock::default(), data_dir: None, presets }
    }

    /// Sessions are written to `<dir>/<id>.json` and reloaded on demand.
    pub fn persistent(presets: PresetCatalog, dir: impl Into<PathBuf>) -> SessionResult<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| SessionError::Storage(format!("{}: {e}", dir.display())))?;
        Ok(Self { sessions: RwLock::default(), data_dir: Some(dir), presets })
    }

    pub fn presets(&self) -> &PresetCatalog {
        &self.presets
    }

    pub fn create(&self, req: &CreateRequest) -> SessionResult<(String, StateView)> {
        let name = req.player_name.trim();
        if name.is_empty() || name.chars().count() > MAX_NAME_LEN {
            return Err(SessionError::InvalidRequest(format!(
                "player_name must be 1 to {MAX_NAME_LEN} characters"
            )));
        }
        let preset = req.resolve(&self.presets)?;
        let id = uuid::Uuid::new_v4().simple().to_string();
        let seed = req.seed.unwrap_or_else(rand::random);
        let state = SessionState::new(id.clone(), &preset, seed, name, req.researcher_mode)?;
        self.persist(&state)?;
        let view = state.view();
        self.sessions.write().expect("session map lock").insert(id.clone(), Arc::new(Mutex::new(state)));
        tracing::info!(session = %id, seed, "session created");
        Ok((id, view))
    }

    fn snapshot_path(&self, id: &str) -> Option<PathBuf> {
        self.data_dir.as_ref().map(|d| d.join(format!("{id}.json")))
    }

    fn lookup(&self, id: &str) -> SessionResult<Shared> {
        if let Some(s) = self.sessions.read().expect("session map lock").get(id) {
            return Ok(s.clone());
        }
        let not_found = || SessionError::NotFound(format!("session `{id}`"));
        let valid_id =
            !id.is_empty() && id.len() <= 64 && id.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'-');
        let path = self.snapshot_path(id).filter(|_| valid_id).ok_or_else(not_found)?;
        let text = match fs::read_to_string(&path) {
            Ok(text) => text,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Err(not_found()),
            Err(e) => return Err(SessionError::Storage(format!("{}: {e}", path.display()))),
        };
        let state = SessionState::from_json(&text)?;
        if state.session_id() != id {
            return Err(SessionError::Storage(format!("{} holds another session", path.display())));
        }
        let mut map = self.sessions.write().expect("session map lock");
        Ok(map.entry(id.to_string()).or_insert_with(|| Arc::new(Mutex::new(state))).clone())
    }

    fn persist(&self, state: &SessionState) -> SessionResult<()> {
        let Some(path) = self.snapshot_path(state.session_id()) else {
            return Ok(());
        };
        let storage = |e: std::io::Error| SessionError::Storage(format!("{}: {e}", path.display()));
        let tmp = path.with_extension("json.tmp");
        let mut file = fs::File::create(&tmp).map_err(storage)?;
        file.write_all(state.to_json().as_bytes()).map_err(storage)?;
        file.sync_all().map_err(storage)?;
        fs::rename(&tmp, &path).map_err(storage)
    }

    /// Run a read-only operation under the session lock.
    pub fn read<T>(&self, id: &str, f: impl FnOnce(&SessionState) -> SessionResult<T>) -> SessionResult<T> {
        let session = self.lookup(id)?;
        let guard = session.lock().expect("session lock");
        f(&guard)
    }

    /// Run a mutating operation under the session lock. The change is
    /// applied to a copy and committed only once it has been persisted, so a
    /// failed request never leaves a half-applied state behind.
    pub fn update<T>(
        &self,
        id: &str,
        f: impl FnOnce(&mut SessionState) -> SessionResult<T>,
    ) -> SessionResult<T> {
        let session = self.lookup(id)?;
        let mut guard = session.lock().expect("session lock");
        let mut next = guard.clone();
        let out = f(&mut next)?;
        self.persist(&next)?;
        *guard = next;
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.sessions.read().expect("session map lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn data_dir(&self) -> Option<&Path> {
        self.data_dir.as_deref()
    }
}
