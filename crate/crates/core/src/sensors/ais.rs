//! AIS traffic. Reports are exact and lossless; each may carry the sender's
//! local weather as an annex.

use serde::{Deserialize, Serialize};

use super::{Detection, Source};
use crate::error::Result;
use crate::geometry::Vec2;
use crate::world::{RemoteStation, Scenario, WeatherSample, WorldState};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AisMessage {
    pub sender_id: String,
    pub t_s: f64,
    pub position_m: Vec2,
    pub velocity_mps: Vec2,
    pub heading_rad: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weather_annex: Option<WeatherSample>,
}

impl AisMessage {
    pub fn is_station(&self) -> bool {
        self.sender_id.starts_with("station-")
    }
}

/// One message per AIS-equipped vessel (by id), then one per remote station.
/// Vessels always attach their weather; stations only when their annex is enabled.
pub fn ais_receive(world: &WorldState, scenario: &Scenario) -> Result<Vec<AisMessage>> {
    let segment = &world.active_weather;
    let mut out = Vec::new();
    let mut equipped: Vec<_> = scenario.vessels.iter().filter(|v| v.ais_equipped).collect();
    equipped.sort_by(|a, b| a.id.cmp(&b.id));
    for spec in equipped {
        let Some(state) = world.vessel_states.get(&spec.id) else {
            continue;
        };
        out.push(AisMessage {
            sender_id: spec.id.clone(),
            t_s: world.t_s,
            position_m: state.position_m,
            velocity_mps: state.velocity_mps,
            heading_rad: state.heading_rad,
            weather_annex: Some(segment.sample_at(state.position_m)),
        });
    }
    for (i, station) in scenario.remote_stations.iter().enumerate() {
        out.push(AisMessage {
            sender_id: RemoteStation::id(i),
            t_s: world.t_s,
            position_m: station.position_m,
            velocity_mps: Vec2::ZERO,
            heading_rad: 0.0,
            weather_annex: station
                .weather_annex
                .then(|| segment.sample_at(station.position_m)),
        });
    }
    Ok(out)
}

/// Vessel messages as detections. Shore stations are infrastructure, not contacts.
pub fn ais_detections(messages: &[AisMessage]) -> Vec<Detection> {
    messages
        .iter()
        .filter(|m| !m.is_station())
        .map(|m| Detection {
            source: Source::Ais,
            t_s: m.t_s,
            object_hint: Some(m.sender_id.clone()),
            position_m: m.position_m,
            velocity_mps: Some(m.velocity_mps),
            size_class_estimate: None,
            confidence: 1.0,
            truth_id: Some(m.sender_id.clone()),
        })
        .collect()
}

/// The own ship's outgoing report, carrying its locally measured weather.
pub fn own_broadcast(world: &WorldState, scenario: &Scenario, local: WeatherSample) -> Option<AisMessage> {
    scenario.amv.ais_equipped.then(|| AisMessage {
        sender_id: scenario.amv.id.clone(),
        t_s: world.t_s,
        position_m: world.own.position_m,
        velocity_mps: world.own.velocity_mps,
        heading_rad: world.own.heading_rad,
        weather_annex: Some(local),
    })
}
