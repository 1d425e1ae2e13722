//! Ground truth: scenario files, vessel kinematics, and the true weather field.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Vec2;

/// Top-level keys a scenario file may carry. `dt_s` may be omitted.
pub const SCENARIO_KEYS: [&str; 8] = [
    "duration_s",
    "dt_s",
    "seed",
    "amv",
    "vessels",
    "obstacles",
    "weather_timeline",
    "remote_stations",
];

const TIME_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SizeClass {
    Small,
    Medium,
    Large,
}

impl SizeClass {
    /// Inherent optical contrast used when a vessel does not specify one.
    pub fn default_contrast(self) -> f64 {
        match self {
            SizeClass::Small => 0.4,
            SizeClass::Medium => 0.7,
            SizeClass::Large => 1.0,
        }
    }
}

/// One constant-velocity leg. `position_m` is where the vessel is at `start_time_s`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Leg {
    pub start_time_s: f64,
    pub position_m: Vec2,
    pub velocity_mps: Vec2,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VesselSpec {
    pub id: String,
    pub size_class: SizeClass,
    #[serde(default)]
    pub ais_equipped: bool,
    pub legs: Vec<Leg>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contrast: Option<f64>,
}

impl VesselSpec {
    pub fn contrast(&self) -> f64 {
        self.contrast
            .unwrap_or_else(|| self.size_class.default_contrast())
    }

    fn active_leg(&self, t_s: f64) -> &Leg {
        self.legs
            .iter()
            .rev()
            .find(|leg| leg.start_time_s <= t_s + TIME_EPS)
            .unwrap_or(&self.legs[0])
    }

    /// Position and velocity at time `t_s`.
    pub fn kinematics_at(&self, t_s: f64) -> (Vec2, Vec2) {
        let leg = self.active_leg(t_s);
        let elapsed = t_s - leg.start_time_s;
        (leg.position_m + leg.velocity_mps * elapsed, leg.velocity_mps)
    }
}

/// A fixed surface structure or a submerged hazard.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Obstacle {
    pub position_m: Vec2,
    pub extent_m: f64,
    #[serde(default)]
    pub submerged: bool,
}

impl Obstacle {
    /// Ground-truth identifier; obstacles are numbered by file order.
    pub fn id(index: usize) -> String {
        format!("obstacle-{index}")
    }
}

/// Per-channel linear spatial gradients, in channel units per kilometer (x east, y north).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WeatherGradient {
    pub psi: Vec2,
    pub rain: Vec2,
    pub wind: Vec2,
    pub humidity: Vec2,
    pub luminance: Vec2,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeatherSegment {
    pub t_start_s: f64,
    pub t_end_s: f64,
    pub psi: f64,
    pub rain_mmph: f64,
    pub wind_mps: f64,
    pub humidity_pct: f64,
    pub luminance_lux: f64,
    pub label: String,
    #[serde(default, skip_serializing_if = "is_zero_gradient")]
    pub gradient: WeatherGradient,
}

fn is_zero_gradient(g: &WeatherGradient) -> bool {
    *g == WeatherGradient::default()
}

impl WeatherSegment {
    pub fn contains(&self, t_s: f64) -> bool {
        t_s >= self.t_start_s - TIME_EPS && t_s < self.t_end_s
    }

    /// Channel values at a point; the gradient is measured from the world origin.
    pub fn sample_at(&self, position_m: Vec2) -> WeatherSample {
        let km = position_m * 1e-3;
        let g = &self.gradient;
        WeatherSample {
            psi: self.psi + g.psi.dot(km),
            rain_mmph: self.rain_mmph + g.rain.dot(km),
            wind_mps: self.wind_mps + g.wind.dot(km),
            humidity_pct: self.humidity_pct + g.humidity.dot(km),
            luminance_lux: self.luminance_lux + g.luminance.dot(km),
        }
        .clamped()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RemoteStation {
    pub position_m: Vec2,
    #[serde(default)]
    pub weather_annex: bool,
}

impl RemoteStation {
    pub fn id(index: usize) -> String {
        format!("station-{index}")
    }
}

/// The five weather channels every sensor and template speaks in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Channel {
    Aerosol,
    Rain,
    Wind,
    Humidity,
    Luminance,
}

impl Channel {
    /// Feature-vector order.
    pub const ALL: [Channel; 5] = [
        Channel::Aerosol,
        Channel::Rain,
        Channel::Wind,
        Channel::Humidity,
        Channel::Luminance,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Channel::Aerosol => "aerosol",
            Channel::Rain => "rain",
            Channel::Wind => "wind",
            Channel::Humidity => "humidity",
            Channel::Luminance => "luminance",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_name(name: &str) -> Option<Channel> {
        Channel::ALL.into_iter().find(|c| c.name() == name)
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Point values of the five weather channels.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct WeatherSample {
    pub psi: f64,
    pub rain_mmph: f64,
    pub wind_mps: f64,
    pub humidity_pct: f64,
    pub luminance_lux: f64,
}

impl WeatherSample {
    pub fn get(&self, channel: Channel) -> f64 {
        self.to_array()[channel.index()]
    }

    pub fn to_array(&self) -> [f64; 5] {
        [
            self.psi,
            self.rain_mmph,
            self.wind_mps,
            self.humidity_pct,
            self.luminance_lux,
        ]
    }

    pub fn from_array(v: [f64; 5]) -> Self {
        Self {
            psi: v[0],
            rain_mmph: v[1],
            wind_mps: v[2],
            humidity_pct: v[3],
            luminance_lux: v[4],
        }
    }

    /// Magnitudes clamped to be nonnegative, humidity to [0, 100].
    pub fn clamped(self) -> Self {
        Self {
            psi: self.psi.max(0.0),
            rain_mmph: self.rain_mmph.max(0.0),
            wind_mps: self.wind_mps.max(0.0),
            humidity_pct: self.humidity_pct.clamp(0.0, 100.0),
            luminance_lux: self.luminance_lux.max(0.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub duration_s: f64,
    #[serde(default = "default_dt")]
    pub dt_s: f64,
    pub seed: u64,
    pub amv: VesselSpec,
    pub vessels: Vec<VesselSpec>,
    pub obstacles: Vec<Obstacle>,
    pub weather_timeline: Vec<WeatherSegment>,
    pub remote_stations: Vec<RemoteStation>,
}

fn default_dt() -> f64 {
    1.0
}

/// Kinematic snapshot of one vessel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VesselState {
    pub position_m: Vec2,
    pub velocity_mps: Vec2,
    pub heading_rad: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WorldState {
    pub tick: u64,
    pub t_s: f64,
    pub own: VesselState,
    pub vessel_states: BTreeMap<String, VesselState>,
    pub active_weather: WeatherSegment,
}

impl Scenario {
    /// Parses and validates scenario text. `origin` is only used in error messages.
    pub fn from_json_str(text: &str, origin: &Path) -> Result<Scenario> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse {
            path: origin.to_path_buf(),
            message: e.to_string(),
        })?;
        if let Some(first) = key_diagnostics(&value).into_iter().next() {
            return Err(Error::Validation(first));
        }
        let scenario: Scenario = serde_json::from_value(value).map_err(|e| Error::Parse {
            path: origin.to_path_buf(),
            message: e.to_string(),
        })?;
        match scenario.diagnostics().into_iter().next() {
            Some(first) => Err(Error::Validation(first)),
            None => Ok(scenario),
        }
    }

    /// Every violated invariant, in a fixed order. Empty means valid.
    pub fn diagnostics(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !(self.duration_s > 0.0 && self.duration_s.is_finite()) {
            out.push(format!("duration_s must be > 0 (got {})", self.duration_s));
        }
        if !(self.dt_s > 0.0 && self.dt_s.is_finite()) {
            out.push(format!("dt_s must be > 0 (got {})", self.dt_s));
        }

        let mut ids = BTreeSet::new();
        for vessel in std::iter::once(&self.amv).chain(&self.vessels) {
            if !ids.insert(vessel.id.as_str()) {
                out.push(format!("duplicate id {:?}", vessel.id));
            }
            vessel_diagnostics(vessel, &mut out);
        }

        for (i, obstacle) in self.obstacles.iter().enumerate() {
            if !(obstacle.extent_m >= 0.0) || !obstacle.position_m.is_finite() {
                out.push(format!("obstacles[{i}] needs a finite position and extent_m >= 0"));
            }
        }

        for (i, seg) in self.weather_timeline.iter().enumerate() {
            let magnitudes = [
                seg.psi,
                seg.rain_mmph,
                seg.wind_mps,
                seg.humidity_pct,
                seg.luminance_lux,
            ];
            if magnitudes.iter().any(|m| !(*m >= 0.0) || !m.is_finite()) {
                out.push(format!("weather_timeline[{i}] has a negative magnitude"));
            }
            if seg.humidity_pct > 100.0 {
                out.push(format!("weather_timeline[{i}] humidity_pct above 100"));
            }
            if !(seg.t_end_s > seg.t_start_s) {
                out.push(format!("weather_timeline[{i}] ends before it starts"));
            }
        }
        out.extend(timeline_diagnostics(&self.weather_timeline, self.duration_s));
        out
    }

    pub fn ticks(&self) -> u64 {
        (self.duration_s / self.dt_s + TIME_EPS).floor() as u64
    }

    pub fn time_of_tick(&self, tick: u64) -> f64 {
        tick as f64 * self.dt_s
    }

    pub fn segment_at(&self, t_s: f64) -> Result<&WeatherSegment> {
        if !(t_s >= -TIME_EPS && t_s <= self.duration_s + TIME_EPS) {
            return Err(Error::OutOfRange(t_s));
        }
        self.weather_timeline
            .iter()
            .find(|seg| seg.contains(t_s))
            .or_else(|| self.weather_timeline.last())
            .ok_or(Error::OutOfRange(t_s))
    }

    /// Ground-truth ids of every surface object: vessels then unsubmerged obstacles.
    pub fn surface_object_ids(&self) -> Vec<String> {
        let mut ids: Vec<String> = self.vessels.iter().map(|v| v.id.clone()).collect();
        ids.extend(
            self.obstacles
                .iter()
                .enumerate()
                .filter(|(_, o)| !o.submerged)
                .map(|(i, _)| Obstacle::id(i)),
        );
        ids
    }
}

fn vessel_diagnostics(vessel: &VesselSpec, out: &mut Vec<String>) {
    let id = &vessel.id;
    if vessel.legs.is_empty() {
        out.push(format!("vessel {id:?} has no legs"));
        return;
    }
    if vessel.legs[0].start_time_s.abs() > TIME_EPS {
        out.push(format!("vessel {id:?} first leg must start at 0"));
    }
    if vessel
        .legs
        .windows(2)
        .any(|w| !(w[1].start_time_s > w[0].start_time_s))
    {
        out.push(format!("vessel {id:?} legs not ordered by start_time_s"));
    }
    if vessel
        .legs
        .iter()
        .any(|l| !l.position_m.is_finite() || !l.velocity_mps.is_finite())
    {
        out.push(format!("vessel {id:?} has a non-finite leg"));
    }
    if let Some(c) = vessel.contrast {
        if !(c > 0.0 && c <= 1.0) {
            out.push(format!("vessel {id:?} contrast must be in (0, 1]"));
        }
    }
}

fn timeline_diagnostics(timeline: &[WeatherSegment], duration_s: f64) -> Vec<String> {
    let mut out = Vec::new();
    if timeline.is_empty() {
        out.push("weather_timeline is empty".to_string());
        return out;
    }
    let mut sorted: Vec<&WeatherSegment> = timeline.iter().collect();
    sorted.sort_by(|a, b| a.t_start_s.total_cmp(&b.t_start_s));
    if sorted[0].t_start_s.abs() > TIME_EPS {
        out.push("weather_timeline does not start at 0".to_string());
    }
    for pair in sorted.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        if b.t_start_s < a.t_end_s - TIME_EPS {
            out.push(format!(
                "weather_timeline overlap between {:?} and {:?}",
                a.label, b.label
            ));
        } else if b.t_start_s > a.t_end_s + TIME_EPS {
            out.push(format!(
                "weather_timeline gap between {:?} and {:?}",
                a.label, b.label
            ));
        }
    }
    let end = sorted.iter().map(|s| s.t_end_s).fold(f64::MIN, f64::max);
    if end < duration_s - TIME_EPS {
        out.push(format!("weather_timeline ends at {end} s, before duration_s"));
    }
    out
}

fn key_diagnostics(value: &serde_json::Value) -> Vec<String> {
    let Some(object) = value.as_object() else {
        return vec!["scenario must be a JSON object".to_string()];
    };
    let mut out = Vec::new();
    for key in object.keys() {
        if !SCENARIO_KEYS.contains(&key.as_str()) {
            out.push(format!("unknown key {key:?}"));
        }
    }
    for key in SCENARIO_KEYS {
        if key != "dt_s" && !object.contains_key(key) {
            out.push(format!("missing key {key:?}"));
        }
    }
    out
}

/// Reads, parses, and validates a scenario file.
pub fn load_scenario(path: impl AsRef<Path>) -> Result<Scenario> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    Scenario::from_json_str(&text, path)
}

/// All diagnostics for a scenario file; I/O and syntax problems become single diagnostics.
pub fn validate_scenario(path: impl AsRef<Path>) -> Vec<String> {
    let path = path.as_ref();
    let text = match std::fs::read_to_string(path) {
        Ok(text) => text,
        Err(e) => return vec![format!("cannot read {}: {e}", path.display())],
    };
    let value: serde_json::Value = match serde_json::from_str(&text) {
        Ok(v) => v,
        Err(e) => return vec![format!("parse error: {e}")],
    };
    let keys = key_diagnostics(&value);
    if !keys.is_empty() {
        return keys;
    }
    match serde_json::from_value::<Scenario>(value) {
        Ok(scenario) => scenario.diagnostics(),
        Err(e) => vec![format!("parse error: {e}")],
    }
}

fn vessel_state(spec: &VesselSpec, t_s: f64, previous_heading: f64) -> VesselState {
    let (position_m, velocity_mps) = spec.kinematics_at(t_s);
    let heading_rad = if velocity_mps.norm_sq() > 0.0 {
        velocity_mps.bearing()
    } else {
        previous_heading
    };
    VesselState {
        position_m,
        velocity_mps,
        heading_rad,
    }
}

/// World at tick 0.
pub fn initial_state(scenario: &Scenario) -> Result<WorldState> {
    state_at_tick(scenario, 0, None)
}

fn state_at_tick(
    scenario: &Scenario,
    tick: u64,
    previous: Option<&WorldState>,
) -> Result<WorldState> {
    let t_s = scenario.time_of_tick(tick);
    let heading_of = |id: &str| {
        previous
            .and_then(|p| p.vessel_states.get(id))
            .map_or(0.0, |s| s.heading_rad)
    };
    let vessel_states = scenario
        .vessels
        .iter()
        .map(|v| (v.id.clone(), vessel_state(v, t_s, heading_of(&v.id))))
        .collect();
    let own_heading = previous.map_or(0.0, |p| p.own.heading_rad);
    Ok(WorldState {
        tick,
        t_s,
        own: vessel_state(&scenario.amv, t_s, own_heading),
        vessel_states,
        active_weather: scenario.segment_at(t_s)?.clone(),
    })
}

/// Advances the world by one `dt_s`. Positions are evaluated in closed form along
/// each vessel's active leg, so no integration error accumulates.
pub fn step_world(state: &WorldState, scenario: &Scenario) -> Result<WorldState> {
    let next_tick = state.tick + 1;
    let next_t = scenario.time_of_tick(next_tick);
    if next_t > scenario.duration_s + TIME_EPS {
        return Err(Error::EndOfScenario {
            t_s: next_t,
            duration_s: scenario.duration_s,
        });
    }
    state_at_tick(scenario, next_tick, Some(state))
}

/// True weather at a point and time.
pub fn true_weather_at(scenario: &Scenario, position_m: Vec2, t_s: f64) -> Result<WeatherSample> {
    Ok(scenario.segment_at(t_s)?.sample_at(position_m))
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn segment(t0: f64, t1: f64, psi: f64, label: &str) -> WeatherSegment {
        WeatherSegment {
            t_start_s: t0,
            t_end_s: t1,
            psi,
            rain_mmph: 0.0,
            wind_mps: 3.0,
            humidity_pct: 60.0,
            luminance_lux: 50_000.0,
            label: label.to_string(),
            gradient: WeatherGradient::default(),
        }
    }

    pub fn vessel(id: &str, class: SizeClass, pos: [f64; 2], vel: [f64; 2]) -> VesselSpec {
        VesselSpec {
            id: id.to_string(),
            size_class: class,
            ais_equipped: false,
            legs: vec![Leg {
                start_time_s: 0.0,
                position_m: pos.into(),
                velocity_mps: vel.into(),
            }],
            contrast: None,
        }
    }

    pub fn scenario(duration_s: f64, vessels: Vec<VesselSpec>, timeline: Vec<WeatherSegment>) -> Scenario {
        Scenario {
            duration_s,
            dt_s: 1.0,
            seed: 7,
            amv: vessel("amv", SizeClass::Medium, [0.0, 0.0], [0.0, 0.0]),
            vessels,
            obstacles: Vec::new(),
            weather_timeline: timeline,
            remote_stations: Vec::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    const MINIMAL: &str = r#"{
        "duration_s": 60, "seed": 1,
        "amv": {"id": "amv", "size_class": "medium", "legs": [{"start_time_s": 0, "position_m": [0, 0], "velocity_mps": [0, 0]}]},
        "vessels": [{"id": "v1", "size_class": "large", "ais_equipped": true,
                     "legs": [{"start_time_s": 0, "position_m": [1000, 0], "velocity_mps": [0, 0]}]}],
        "obstacles": [],
        "weather_timeline": [{"t_start_s": 0, "t_end_s": 60, "psi": 20, "rain_mmph": 0, "wind_mps": 3,
                              "humidity_pct": 60, "luminance_lux": 50000, "label": "clear_sunny"}],
        "remote_stations": []
    }"#;

    fn parse(text: &str) -> Result<Scenario> {
        Scenario::from_json_str(text, Path::new("inline.json"))
    }

    #[test]
    fn minimal_file_loads() {
        let s = parse(MINIMAL).unwrap();
        assert_eq!(s.vessels.len(), 1);
        assert_eq!(s.weather_timeline.len(), 1);
        assert_eq!(s.dt_s, 1.0);
        assert_eq!(s.vessels[0].contrast(), 1.0);
    }

    #[test]
    fn overlapping_segments_rejected() {
        let text = MINIMAL.replace(
            r#""label": "clear_sunny"}]"#,
            r#""label": "clear_sunny"}, {"t_start_s": 30, "t_end_s": 60, "psi": 230, "rain_mmph": 0, "wind_mps": 3,
                "humidity_pct": 60, "luminance_lux": 20000, "label": "hazy"}]"#,
        );
        match parse(&text) {
            Err(Error::Validation(msg)) => assert!(msg.contains("weather_timeline overlap"), "{msg}"),
            other => panic!("expected overlap, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_ids_rejected() {
        let text = MINIMAL.replace(r#""id": "v1""#, r#""id": "amv""#);
        match parse(&text) {
            Err(Error::Validation(msg)) => assert!(msg.contains("duplicate id"), "{msg}"),
            other => panic!("expected duplicate id, got {other:?}"),
        }
    }

    #[test]
    fn unknown_and_missing_keys() {
        let unknown = MINIMAL.replacen('{', r#"{"extra": 1, "#, 1);
        assert!(matches!(parse(&unknown), Err(Error::Validation(m)) if m.contains("unknown key")));
        let missing = MINIMAL.replace(r#""obstacles": [],"#, "");
        assert!(matches!(parse(&missing), Err(Error::Validation(m)) if m.contains("\"obstacles\"")));
        assert!(matches!(parse("{ nope"), Err(Error::Parse { .. })));
    }

    #[test]
    fn linear_kinematics() {
        let s = scenario(
            10.0,
            vec![
                vessel("mover", SizeClass::Large, [0.0, 0.0], [5.0, 0.0]),
                vessel("still", SizeClass::Large, [10.0, 20.0], [0.0, 0.0]),
            ],
            vec![segment(0.0, 10.0, 0.0, "clear_sunny")],
        );
        let w0 = initial_state(&s).unwrap();
        let w1 = step_world(&w0, &s).unwrap();
        assert_eq!(w1.vessel_states["mover"].position_m, Vec2::new(5.0, 0.0));
        assert_eq!(w1.vessel_states["still"].position_m, Vec2::new(10.0, 20.0));
        assert!((w1.vessel_states["mover"].heading_rad - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn segment_switches_at_boundary() {
        let s = scenario(
            200.0,
            vec![],
            vec![segment(0.0, 100.0, 10.0, "clear_sunny"), segment(100.0, 200.0, 230.0, "hazy")],
        );
        let mut w = initial_state(&s).unwrap();
        while w.t_s < 98.5 {
            w = step_world(&w, &s).unwrap();
        }
        assert_eq!(w.active_weather.label, "clear_sunny");
        let w = step_world(&w, &s).unwrap();
        assert_eq!(w.t_s, 100.0);
        assert_eq!(w.active_weather.label, "hazy");
    }

    #[test]
    fn stepping_past_end_fails() {
        let s = scenario(2.0, vec![], vec![segment(0.0, 2.0, 0.0, "clear_sunny")]);
        let w = step_world(&step_world(&initial_state(&s).unwrap(), &s).unwrap(), &s).unwrap();
        assert!(matches!(step_world(&w, &s), Err(Error::EndOfScenario { .. })));
    }

    #[test]
    fn weather_lookup_and_gradient() {
        let mut haze = segment(0.0, 100.0, 230.0, "hazy");
        let s = scenario(100.0, vec![], vec![haze.clone()]);
        assert_eq!(true_weather_at(&s, Vec2::new(-3000.0, 9000.0), 50.0).unwrap().psi, 230.0);
        assert_eq!(true_weather_at(&s, Vec2::ZERO, 0.0).unwrap().psi, 230.0);
        assert!(matches!(true_weather_at(&s, Vec2::ZERO, 101.0), Err(Error::OutOfRange(_))));

        haze.gradient.psi = Vec2::new(0.1, 0.0);
        let s = scenario(100.0, vec![], vec![haze]);
        let psi = true_weather_at(&s, Vec2::new(10_000.0, 0.0), 10.0).unwrap().psi;
        assert!((psi - 231.0).abs() < 1e-9);
    }

    #[test]
    fn gap_and_short_timeline_reported() {
        let s = scenario(
            300.0,
            vec![],
            vec![segment(0.0, 100.0, 0.0, "a"), segment(150.0, 250.0, 0.0, "b")],
        );
        let d = s.diagnostics();
        assert!(d.iter().any(|m| m.contains("gap")));
        assert!(d.iter().any(|m| m.contains("before duration_s")));
    }
}
