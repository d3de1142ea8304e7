//! Config-driven batch experiments.
//!
//! Each seed gets its own fishery which is driven day by day: regrowth,
//! advisory check, a fixed number of casts decided by a harvest policy, then
//! the day's catch is sold. Per-day statistics go to CSV, and a versioned
//! JSON summary records initial/final mean lengths, money and events.

pub mod config;
pub mod engine;
pub mod error;
pub mod output;
pub mod record;
pub mod trend;

pub use config::{ExperimentConfig, Limits, OutputFormat, OutputSpec, CONFIG_VERSION};
pub use engine::{run_day, run_experiment, run_seed, DayParams, ExperimentResult};
pub use error::{HarnessError, Result};
pub use output::{csv_rows, write_csv, write_json_summary, write_outputs, CsvRow, CSV_HEADER};
pub use record::{AdvisoryEvent, DayRecord, ExperimentSummary, SeedRun, SeedSummary, SoldFish, SpeciesDay};
pub use trend::{ols_slope, slope_t_test, TrendTest};

/// The shipped demonstration scenario: one species on [12, 48] inches,
/// cap 200, mutation sd 2, price divisor 8, limit 10 fish/day, 30 casts/day,
/// greedy above-mean keeping and refill-to-cap regrowth, 100 days x 20 seeds.
pub const DEMO_CONFIG: &str = include_str!("../configs/demo.json");

pub fn demo_config() -> ExperimentConfig {
    ExperimentConfig::from_json(DEMO_CONFIG).expect("shipped demo config is valid")
}
