use std::collections::{BTreeMap, VecDeque};

use serde_json::json;

use super::log::{sort_tick, EventKind, EventRecord};
use crate::error::{Error, Result};
use crate::fusion::{need_to_learn, weather_awareness, AwarenessPipeline, GridSpec, RiskLevel, TRACK_GATE_M};
use crate::geometry::Vec2;
use crate::manager::{build_schedule, build_weights, sensor_settings, SensorSchedule, WeatherHistory};
use crate::sensors::{
    ais_detections, ais_receive, attach_radar_velocities, eo_scan, own_broadcast, radar_scan, read_channel,
    sonar_scan, visibility_from_aerosol, Band, Detection, Scene, SensorConfig, SensorStream, Source, StreamLabel,
};
use crate::weather::{
    bootstrap_network, detect_weather, extract_features_held, forecast, Matched, WeatherAssessment,
    WeatherStateNetwork,
};
use crate::world::{initial_state, step_world, true_weather_at, Channel, Scenario, WeatherSample};

/// Seconds between weather evaluations.
pub const WEATHER_EVAL_INTERVAL_S: f64 = 10.0;
/// Trailing feature window, seconds.
pub const FEATURE_WINDOW_S: f64 = 20.0;
/// Radar velocities difference against the scan this many ticks back.
pub const RADAR_VELOCITY_BASELINE_TICKS: usize = 5;
/// Template assumed before the first evaluation.
pub const INITIAL_TEMPLATE: &str = "clear_sunny";

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub seed: Option<u64>,
    pub sensors: SensorConfig,
    pub network: WeatherStateNetwork,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            seed: None,
            sensors: SensorConfig::default(),
            network: bootstrap_network(),
        }
    }
}

/// Everything a run produces: the ordered event log and the network as learned by the end.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub records: Vec<EventRecord>,
    pub network: WeatherStateNetwork,
}

struct WeatherLoop {
    network: WeatherStateNetwork,
    history: WeatherHistory,
    schedule: SensorSchedule,
    current: String,
    latest: [f64; 5],
    next_eval_t: f64,
}

/// Runs a scenario from tick 0 through `duration_s` and returns its event log.
pub fn simulate(scenario: &Scenario, options: &RunOptions) -> Result<RunOutput> {
    options.sensors.validate()?;
    let problems = options.network.diagnostics();
    if !problems.is_empty() {
        return Err(Error::Validation(problems.join("; ")));
    }
    let seed = options.seed.unwrap_or(scenario.seed);
    let cfg = &options.sensors;
    let mut radar_rng = SensorStream::new(seed, StreamLabel::Radar);
    let mut sonar_rng = SensorStream::new(seed, StreamLabel::Sonar);
    let mut weather_rng = SensorStream::new(seed, StreamLabel::Weather);

    let network = options.network.clone();
    let start = WeatherAssessment {
        matched: Matched::Single(INITIAL_TEMPLATE.to_string()),
        distance: 0.0,
        novel: false,
        t_s: 0.0,
    };
    let schedule = build_schedule(&start, &network)?;
    let mut wx = WeatherLoop {
        network,
        history: WeatherHistory::default(),
        schedule,
        current: INITIAL_TEMPLATE.to_string(),
        latest: [0.0; 5],
        next_eval_t: 0.0,
    };
    let mut weights = build_weights(
        &start,
        &wx.network,
        visibility_from_aerosol(0.0)?,
        visibility_from_aerosol(0.0)? / cfg.eo.alpha_ir,
        cfg.radar.r_min_m,
    )?;
    let mut pipeline = AwarenessPipeline::new(cfg.radar.clone());
    let mut radar_scans: VecDeque<Vec<Detection>> = VecDeque::new();
    let mut records = Vec::new();

    let mut world = initial_state(scenario)?;
    for tick in 0..=scenario.ticks() {
        if tick > 0 {
            world = step_world(&world, scenario)?;
        }
        let t = world.t_s;
        let own_pos = world.own.position_m;
        let mut out: Vec<EventRecord> = Vec::new();
        if tick == 0 {
            out.push(schedule_record(t, &wx)?);
            out.push(EventRecord::new(
                t,
                EventKind::Settings,
                json!({"state": wx.current, "settings": sensor_settings(&start, &wx.network)?}),
            )?);
            out.push(EventRecord::new(t, EventKind::WeightProfile, json!({"state": wx.current, "profile": weights}))?);
        }

        // local weather sensors, as scheduled
        let truth = true_weather_at(scenario, own_pos, t)?;
        for channel in wx.schedule.due_sensors(t) {
            let value = read_channel(&truth, channel, &cfg.weather_noise, &mut weather_rng);
            wx.history.push(channel, t, value)?;
            wx.schedule.mark_polled(channel, t)?;
            wx.latest[channel.index()] = value;
            out.push(EventRecord::new(t, EventKind::WeatherReading, json!({"channel": channel, "value": value}))?);
        }

        let messages = ais_receive(&world, scenario)?;
        let remote: Vec<(Vec2, WeatherSample)> = messages
            .iter()
            .filter_map(|m| m.weather_annex.map(|w| (m.position_m, w)))
            .collect();

        if t + 1e-9 >= wx.next_eval_t {
            wx.next_eval_t += WEATHER_EVAL_INTERVAL_S;
            let f = extract_features_held(&wx.history, FEATURE_WINDOW_S, t)?;
            let assessment = detect_weather(&f, &wx.network, &wx.current, t)?;
            let previous = std::mem::take(&mut wx.current);
            wx.current = wx.network.learn(&assessment, &f, &previous, t)?;
            let outlook = forecast(&wx.network, &wx.current)?;
            let picture = weather_awareness(&assessment, &remote, &outlook, own_pos, &GridSpec::default());
            out.push(EventRecord::new(
                t,
                EventKind::WeatherState,
                json!({
                    "state": wx.current,
                    "assessment": picture.local,
                    "forecast": picture.forecast,
                    "map": picture.map,
                    "pocket_bearing_rad": picture.pocket_bearing_rad,
                }),
            )?);

            if assessment.novel {
                pipeline.events.record(t, "novel_weather");
            }
            if wx.current != previous {
                pipeline.events.record(t, format!("weather:{previous}->{}", wx.current));
                let fresh = build_schedule(&assessment, &wx.network)?;
                wx.schedule.retime(&fresh.periods(), t);
                out.push(schedule_record(t, &wx)?);
                out.push(EventRecord::new(
                    t,
                    EventKind::Settings,
                    json!({"state": wx.current, "settings": sensor_settings(&assessment, &wx.network)?}),
                )?);
                let vis = visibility_from_aerosol(f.get(Channel::Aerosol))?;
                weights = build_weights(&assessment, &wx.network, vis, vis / cfg.eo.alpha_ir, cfg.radar.r_min_m)?;
                out.push(EventRecord::new(t, EventKind::WeightProfile, json!({"state": wx.current, "profile": weights}))?);
            }

            pipeline.events.expire(t);
            let score = need_to_learn(&assessment, &pipeline.events, &wx.network.thresholds);
            out.push(EventRecord::new(t, EventKind::NeedToLearn, json!({"score": score, "state": wx.current}))?);

            if let Some(msg) = own_broadcast(&world, scenario, WeatherSample::from_array(wx.latest)) {
                out.push(EventRecord::new(t, EventKind::Broadcast, msg)?);
            }
        }

        // imaging and ranging sensors
        let scene = Scene::new(&world, scenario);
        let mut detections = Vec::new();
        let mut radar = radar_scan(&scene, own_pos, cfg, &mut radar_rng);
        if radar_scans.len() == RADAR_VELOCITY_BASELINE_TICKS {
            let base = RADAR_VELOCITY_BASELINE_TICKS as f64;
            let oldest = radar_scans.pop_front().expect("full queue");
            attach_radar_velocities(&oldest, &mut radar, base * scenario.dt_s, base * TRACK_GATE_M);
        }
        radar_scans.push_back(radar.clone());
        detections.extend(radar);
        detections.extend(eo_scan(&scene, own_pos, cfg, Band::Ir, truth.psi)?);
        detections.extend(eo_scan(&scene, own_pos, cfg, Band::Vis, truth.psi)?);
        detections.extend(ais_detections(&messages));
        detections.extend(sonar_scan(&scene, own_pos, cfg, &mut sonar_rng));
        for d in detections.iter().filter(|d| d.source != Source::Ais) {
            out.push(EventRecord::new(t, EventKind::Detection, d)?);
        }
        for m in &messages {
            out.push(EventRecord::new(t, EventKind::Ais, m)?);
        }

        let awareness = pipeline.step(tick, t, &detections, (own_pos, world.own.velocity_mps), &weights);
        for (obj, risk) in awareness.fused.iter().zip(&awareness.risks) {
            out.push(EventRecord::new(t, EventKind::Fused, json!({"object": obj, "risk": risk}))?);
            if risk.risk == RiskLevel::High {
                out.push(EventRecord::new(t, EventKind::RiskAlert, risk)?);
            }
        }

        sort_tick(&mut out);
        records.extend(out);
    }
    Ok(RunOutput {
        records,
        network: wx.network,
    })
}

fn schedule_record(t: f64, wx: &WeatherLoop) -> Result<EventRecord> {
    let periods: BTreeMap<&str, f64> = wx
        .schedule
        .periods()
        .into_iter()
        .map(|(c, p)| (c.name(), p))
        .collect();
    EventRecord::new(t, EventKind::ScheduleUpdate, json!({"state": wx.current, "periods": periods}))
}
