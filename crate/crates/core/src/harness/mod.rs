//! Headless runner: the tick loop, the canonical event log, and scoring.

mod log;
mod metrics;
mod run;

use std::path::Path;

pub use log::{canonicalize, read_log, round_sig, sort_tick, write_log, EventKind, EventRecord};
pub use metrics::{
    compute_metrics, metrics_from_records, AlertLead, ClassRecall, MetricsReport, SourceScore, TransitionLatency,
    MATCH_RADIUS_M,
};
pub use run::{
    simulate, RunOptions, RunOutput, FEATURE_WINDOW_S, INITIAL_TEMPLATE, RADAR_VELOCITY_BASELINE_TICKS,
    WEATHER_EVAL_INTERVAL_S,
};

use crate::error::{Error, Result};
use crate::world::load_scenario;

/// Runs a scenario file, writes the event log and the metrics report, and
/// returns the report.
pub fn run(
    scenario_path: impl AsRef<Path>,
    log_path: impl AsRef<Path>,
    metrics_path: impl AsRef<Path>,
    options: &RunOptions,
) -> Result<MetricsReport> {
    let scenario = load_scenario(scenario_path)?;
    let output = simulate(&scenario, options)?;
    write_log(&output.records, log_path)?;
    let report = metrics_from_records(&output.records, &scenario)?;
    std::fs::write(metrics_path, metrics_json(&report)? + "\n")?;
    Ok(report)
}

/// Pretty, canonically rounded JSON for a metrics report.
pub fn metrics_json(report: &MetricsReport) -> Result<String> {
    let mut value = serde_json::to_value(report)?;
    canonicalize(&mut value);
    serde_json::to_string_pretty(&value).map_err(Error::from)
}
