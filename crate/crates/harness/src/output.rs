use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::config::OutputFormat;
use crate::engine::ExperimentResult;
use crate::error::{HarnessError, Result};
use crate::record::{ExperimentSummary, SeedRun};

pub const CSV_HEADER: [&str; 11] = [
    "day", "species", "count", "mean_len", "sd_len", "min_len", "max_len", "kept", "released", "money",
    "advisory",
];

/// One `(day, species)` line of the time series. Absent moments (empty
/// population) are written as empty fields.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CsvRow {
    pub day: u64,
    pub species: String,
    pub count: usize,
    pub mean_len: Option<f64>,
    pub sd_len: Option<f64>,
    pub min_len: Option<f64>,
    pub max_len: Option<f64>,
    pub kept: u32,
    pub released: u32,
    pub money: u64,
    pub advisory: bool,
}

pub fn csv_rows(run: &SeedRun) -> Vec<CsvRow> {
    run.days
        .iter()
        .flat_map(|d| {
            d.species.iter().map(move |s| CsvRow {
                day: d.day,
                species: s.species_id.0.clone(),
                count: s.stats.count,
                mean_len: s.stats.mean,
                sd_len: s.stats.sd,
                min_len: s.stats.min,
                max_len: s.stats.max,
                kept: s.kept,
                released: s.released,
                money: s.money,
                advisory: s.advisory_active,
            })
        })
        .collect()
}

// shortest text that parses back to the same f64
fn float_field(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

pub fn write_csv(rows: &[CsvRow], path: &Path) -> Result<()> {
    let csv_err = |source| HarnessError::Csv { path: path.to_path_buf(), source };
    let mut w =
        csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_path(path).map_err(csv_err)?;
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for r in rows {
        w.write_record([
            r.day.to_string(),
            r.species.clone(),
            r.count.to_string(),
            float_field(r.mean_len),
            float_field(r.sd_len),
            float_field(r.min_len),
            float_field(r.max_len),
            r.kept.to_string(),
            r.released.to_string(),
            r.money.to_string(),
            u8::from(r.advisory).to_string(),
        ])
        .map_err(csv_err)?;
    }
    w.flush().map_err(HarnessError::io(path))
}

pub fn write_json_summary(summary: &ExperimentSummary, path: &Path) -> Result<()> {
    let mut text = serde_json::to_string_pretty(summary).expect("summary serializes");
    text.push('\n');
    fs::write(path, text).map_err(HarnessError::io(path))
}

pub fn csv_file_name(seed: u64) -> String {
    format!("timeseries_seed_{seed}.csv")
}

pub const SUMMARY_FILE: &str = "summary.json";

/// Write the requested formats into `dir` (created if missing) and return
/// the paths written.
pub fn write_outputs(
    result: &ExperimentResult,
    dir: &Path,
    formats: &[OutputFormat],
) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(HarnessError::io(dir))?;
    let mut written = Vec::new();
    if formats.contains(&OutputFormat::Csv) {
        for run in &result.runs {
            let path = dir.join(csv_file_name(run.seed));
            write_csv(&csv_rows(run), &path)?;
            written.push(path);
        }
    }
    if formats.contains(&OutputFormat::Json) {
        let path = dir.join(SUMMARY_FILE);
        write_json_summary(&result.summary, &path)?;
        written.push(path);
    }
    Ok(written)
}
