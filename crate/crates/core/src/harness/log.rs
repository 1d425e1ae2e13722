use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{Number, Value};

use crate::error::{Error, Result};

/// Record kinds in their order within a tick.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    Detection,
    Ais,
    WeatherReading,
    WeatherState,
    ScheduleUpdate,
    Settings,
    WeightProfile,
    Fused,
    RiskAlert,
    NeedToLearn,
    Broadcast,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EventRecord {
    pub t_s: f64,
    pub kind: EventKind,
    pub payload: Value,
}

impl EventRecord {
    pub fn new(t_s: f64, kind: EventKind, payload: impl Serialize) -> Result<Self> {
        let mut payload = serde_json::to_value(payload)?;
        canonicalize(&mut payload);
        Ok(Self {
            t_s: round_sig(t_s),
            kind,
            payload,
        })
    }

    /// One JSON line with sorted keys and six significant digits.
    pub fn to_line(&self) -> String {
        let mut value = serde_json::to_value(self).expect("records always serialize");
        canonicalize(&mut value);
        value.to_string()
    }
}

/// Rounds to six significant digits; zero loses its sign.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x + 0.0;
    }
    format!("{x:.5e}").parse().expect("formatted float parses")
}

/// Rounds every float in place. Object keys are already sorted by `serde_json::Map`.
pub fn canonicalize(value: &mut Value) {
    match value {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("is_f64");
            *value = Number::from_f64(round_sig(x)).map_or(Value::Null, Value::Number);
        }
        Value::Array(items) => items.iter_mut().for_each(canonicalize),
        Value::Object(map) => map.values_mut().for_each(canonicalize),
        _ => {}
    }
}

/// Puts one tick's records into their canonical order.
pub fn sort_tick(records: &mut [EventRecord]) {
    records.sort_by_cached_key(|r| (r.kind, r.payload.to_string()));
}

pub fn write_log(records: &[EventRecord], path: impl AsRef<Path>) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    for r in records {
        writeln!(out, "{}", r.to_line())?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_log(path: impl AsRef<Path>) -> Result<Vec<EventRecord>> {
    let path = path.as_ref();
    let reader = BufReader::new(File::open(path)?);
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record = serde_json::from_str(&line).map_err(|e| Error::Parse {
            path: path.to_path_buf(),
            message: format!("line {}: {e}", i + 1),
        })?;
        out.push(record);
    }
    Ok(out)
}
