//! Situational awareness: association of multi-source detections, weighted
//! fusion, classification of unmatched contacts, CPA projection and risk flags,
//! the spatial weather picture, and the need-to-learn signal.

mod associate;
mod classify;
mod cpa;
mod fuse;
mod learn_signal;
mod pipeline;
mod risk;
mod tracker;
mod weather_map;

use serde::{Deserialize, Serialize};

use crate::geometry::Vec2;
use crate::sensors::Detection;

pub use associate::{affinity, associate, Association, AssociationParams};
pub use classify::classify_unmatched;
pub use cpa::cpa;
pub use fuse::{fuse_position, AIS_MULTIPLIER};
pub use learn_signal::{need_to_learn, EventCounter, RARE_EVENT_WINDOW_S};
pub use pipeline::{AwarenessPipeline, TickAwareness};
pub use risk::{assess_risk, RiskFlag, RiskInput, RiskLevel, RiskParams};
pub use tracker::{Track, TrackSample, Tracker, TRACK_GATE_M};
pub use weather_map::{severity, weather_awareness, GridSpec, SeveritySummary, WeatherPicture};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    AisConfirmed,
    RadarEo,
    SmallObject,
    FixedStructure,
    Spurious,
    Underwater,
}

/// One object as seen through every source that reported it this tick.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FusedObject {
    pub fid: u64,
    pub contributing: Vec<Detection>,
    pub position_m: Vec2,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub velocity_mps: Option<Vec2>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identity: Option<String>,
    pub category: Category,
    pub first_seen_t: f64,
    pub last_seen_t: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RiskAssessment {
    pub fid: u64,
    pub t_cpa_s: f64,
    pub d_cpa_m: f64,
    pub flags: Vec<RiskFlag>,
    pub risk: RiskLevel,
}
