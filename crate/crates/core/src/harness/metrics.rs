use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::log::{read_log, EventKind, EventRecord};
use crate::error::{Error, Result};
use crate::geometry::Vec2;
use crate::sensors::{Scene, Source};
use crate::world::{initial_state, load_scenario, step_world, RemoteStation, Scenario, SizeClass};

/// A report counts against a truth object within this distance, meters.
pub const MATCH_RADIUS_M: f64 = 150.0;
const AIS_TOLERANCE_M: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ClassRecall {
    pub truth_instances: u64,
    pub recalled: u64,
    pub recall: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SourceScore {
    pub reports: u64,
    pub true_reports: u64,
    pub truth_instances: u64,
    pub recalled: u64,
    /// Share of reports near some truth object; absent without reports.
    pub precision: Option<f64>,
    /// Share of truth instances near some report; absent without truth.
    pub recall: Option<f64>,
    pub by_class: BTreeMap<SizeClass, ClassRecall>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransitionLatency {
    pub label: String,
    pub t_start_s: f64,
    pub detected_t_s: Option<f64>,
    pub latency_s: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlertLead {
    pub fid: u64,
    pub alert_t_s: f64,
    /// Time left until closest approach when the first alert fired.
    pub lead_s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub ticks: u64,
    pub per_source: BTreeMap<Source, SourceScore>,
    pub fused: SourceScore,
    pub weather_latency: Vec<TransitionLatency>,
    pub alert_lead_times: Vec<AlertLead>,
    pub need_to_learn_high: u64,
}

fn ratio(num: u64, den: u64) -> Option<f64> {
    (den > 0).then(|| num as f64 / den as f64)
}

#[derive(Default)]
struct Tally {
    reports: u64,
    true_reports: u64,
    recalled: BTreeMap<SizeClass, (u64, u64)>,
}

impl Tally {
    /// `reports` are positions of individual reports; `near` are the extra points
    /// each truth may be matched against (for fused objects, their contributors).
    fn add_tick(&mut self, truth: &[(Vec2, SizeClass)], reports: &[Vec2], near: &[Vec2]) {
        let close = |a: Vec2, b: Vec2| a.distance(b) <= MATCH_RADIUS_M;
        for &r in reports {
            self.reports += 1;
            if truth.iter().any(|(p, _)| close(*p, r)) {
                self.true_reports += 1;
            }
        }
        for &(p, class) in truth {
            let slot = self.recalled.entry(class).or_default();
            slot.1 += 1;
            if reports.iter().chain(near).any(|&r| close(p, r)) {
                slot.0 += 1;
            }
        }
    }

    fn score(&self) -> SourceScore {
        let by_class: BTreeMap<SizeClass, ClassRecall> = self
            .recalled
            .iter()
            .map(|(&c, &(hit, n))| {
                (
                    c,
                    ClassRecall {
                        truth_instances: n,
                        recalled: hit,
                        recall: ratio(hit, n),
                    },
                )
            })
            .collect();
        let truth_instances = by_class.values().map(|c| c.truth_instances).sum();
        let recalled = by_class.values().map(|c| c.recalled).sum();
        SourceScore {
            reports: self.reports,
            true_reports: self.true_reports,
            truth_instances,
            recalled,
            precision: ratio(self.true_reports, self.reports),
            recall: ratio(recalled, truth_instances),
            by_class,
        }
    }
}

fn mismatch(msg: impl Into<String>) -> Error {
    Error::MismatchedScenario(msg.into())
}

fn vec_at(value: &Value, key: &str) -> Result<Vec2> {
    serde_json::from_value(value.get(key).cloned().unwrap_or(Value::Null))
        .map_err(|_| mismatch(format!("record lacks a {key} position")))
}

fn f64_at(value: &Value, key: &str) -> Result<f64> {
    value
        .get(key)
        .and_then(Value::as_f64)
        .ok_or_else(|| mismatch(format!("record lacks numeric {key}")))
}

pub fn compute_metrics(log_path: impl AsRef<Path>, scenario_path: impl AsRef<Path>) -> Result<MetricsReport> {
    let scenario = load_scenario(scenario_path)?;
    let records = read_log(log_path)?;
    metrics_from_records(&records, &scenario)
}

/// Scores a log against the scenario's ground truth, replayed tick by tick.
pub fn metrics_from_records(records: &[EventRecord], scenario: &Scenario) -> Result<MetricsReport> {
    let n_ticks = scenario.ticks();
    let mut by_tick: BTreeMap<u64, Vec<&EventRecord>> = BTreeMap::new();
    for r in records {
        if !(r.t_s >= 0.0 && r.t_s <= scenario.duration_s + 1e-6) {
            return Err(mismatch(format!("record at t = {} s outside the scenario", r.t_s)));
        }
        let tick = (r.t_s / scenario.dt_s).round() as u64;
        by_tick.entry(tick).or_default().push(r);
    }

    let stations: Vec<String> = (0..scenario.remote_stations.len()).map(RemoteStation::id).collect();
    let mut sources: BTreeMap<Source, Tally> = BTreeMap::new();
    for s in [Source::Radar, Source::EoIr, Source::EoVis, Source::Ais, Source::Sonar] {
        sources.insert(s, Tally::default());
    }
    let mut fused = Tally::default();

    let mut world = initial_state(scenario)?;
    for tick in 0..=n_ticks {
        if tick > 0 {
            world = step_world(&world, scenario)?;
        }
        let scene = Scene::new(&world, scenario);
        let truth: Vec<(Vec2, SizeClass)> = scene.targets.iter().map(|t| (t.position_m, t.size_class)).collect();
        let tick_records = by_tick.get(&tick).map(Vec::as_slice).unwrap_or(&[]);

        let mut per_source: BTreeMap<Source, Vec<Vec2>> = BTreeMap::new();
        let mut fused_points = Vec::new();
        let mut fused_contributors = Vec::new();
        for r in tick_records {
            match r.kind {
                EventKind::Detection => {
                    let source: Source = serde_json::from_value(r.payload["source"].clone())
                        .map_err(|_| mismatch("detection without a known source"))?;
                    per_source.entry(source).or_default().push(vec_at(&r.payload, "position_m")?);
                }
                EventKind::Ais => {
                    let sender = r.payload["sender_id"].as_str().unwrap_or_default();
                    let position = vec_at(&r.payload, "position_m")?;
                    if stations.iter().any(|s| s == sender) {
                        continue;
                    }
                    let state = world
                        .vessel_states
                        .get(sender)
                        .ok_or_else(|| mismatch(format!("AIS sender {sender:?} is not in the scenario")))?;
                    if state.position_m.distance(position) > AIS_TOLERANCE_M {
                        return Err(mismatch(format!("AIS report from {sender:?} at t = {} s is off its track", r.t_s)));
                    }
                    per_source.entry(Source::Ais).or_default().push(position);
                }
                EventKind::Fused => {
                    let object = &r.payload["object"];
                    fused_points.push(vec_at(object, "position_m")?);
                    for c in object["contributing"].as_array().into_iter().flatten() {
                        fused_contributors.push(vec_at(c, "position_m")?);
                    }
                }
                _ => {}
            }
        }
        for (source, tally) in &mut sources {
            let reports = per_source.get(source).map(Vec::as_slice).unwrap_or(&[]);
            tally.add_tick(&truth, reports, &[]);
        }
        fused.add_tick(&truth, &fused_points, &fused_contributors);
    }

    let weather_states: Vec<(f64, &str)> = records
        .iter()
        .filter(|r| r.kind == EventKind::WeatherState)
        .map(|r| (r.t_s, r.payload["state"].as_str().unwrap_or_default()))
        .collect();
    let mut segments = scenario.weather_timeline.clone();
    segments.sort_by(|a, b| a.t_start_s.total_cmp(&b.t_start_s));
    let weather_latency = segments
        .windows(2)
        .filter(|w| w[0].label != w[1].label)
        .map(|w| {
            let seg = &w[1];
            let detected_t_s = weather_states
                .iter()
                .find(|(t, state)| *t >= seg.t_start_s && *t < seg.t_end_s && *state == seg.label)
                .map(|(t, _)| *t);
            TransitionLatency {
                label: seg.label.clone(),
                t_start_s: seg.t_start_s,
                detected_t_s,
                latency_s: detected_t_s.map(|t| t - seg.t_start_s),
            }
        })
        .collect();

    let mut alert_lead_times: Vec<AlertLead> = Vec::new();
    for r in records.iter().filter(|r| r.kind == EventKind::RiskAlert) {
        let fid = r.payload["fid"].as_u64().ok_or_else(|| mismatch("risk alert without fid"))?;
        if alert_lead_times.iter().all(|a| a.fid != fid) {
            alert_lead_times.push(AlertLead {
                fid,
                alert_t_s: r.t_s,
                lead_s: f64_at(&r.payload, "t_cpa_s")?,
            });
        }
    }

    let need_to_learn_high = records
        .iter()
        .filter(|r| r.kind == EventKind::NeedToLearn)
        .filter(|r| r.payload["score"].as_f64().is_some_and(|s| s >= 0.5))
        .count() as u64;

    Ok(MetricsReport {
        ticks: n_ticks + 1,
        per_source: sources.iter().map(|(s, t)| (*s, t.score())).collect(),
        fused: fused.score(),
        weather_latency,
        alert_lead_times,
        need_to_learn_high,
    })
}
