//! One interactive fishing game per player, served over HTTP/JSON.
//!
//! A [`SessionState`] is the authoritative game: the player's own fishery,
//! inventory, money, daily keep count, the fish currently on the line and a
//! mailbox for the scientist's letters. [`SessionStore`] serializes requests
//! per session and persists a snapshot after every successful mutation;
//! [`api::router`] exposes it all as REST endpoints.

pub mod api;
pub mod error;
pub mod presets;
pub mod session;
pub mod store;
pub mod view;

pub use api::{router, serve, ServeOptions};
pub use error::{SessionError, SessionResult};
pub use presets::{Preset, PresetCatalog};
pub use session::{CastOutcome, MailItem, Phase, SellRequest, SessionSnapshot, SessionState};
pub use store::{CreateRequest, SessionStore};
pub use view::{CatchView, EndDayView, InventoryItem, MailView, SpeciesStatsView, StateView, StatsView};
