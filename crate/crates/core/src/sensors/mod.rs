//! Simulated sensors: haze-limited electro-optics, radar and sonar, AIS, and
//! the local weather package.
//!
//! Every scan is a pure function of the scene, the configuration, and (for the
//! stochastic sensors) the caller's random stream. Detections are reported in
//! world coordinates.

mod ais;
mod local;
mod optics;
mod radar;
mod rng;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Vec2;
use crate::world::{Obstacle, Scenario, SizeClass, WorldState};

pub use ais::{ais_detections, ais_receive, own_broadcast, AisMessage};
pub use local::{read_channel, weather_sensors_read, WeatherNoise};
pub use optics::{
    eo_scan, extinction, ir_visibility, visibility_from_aerosol, Band, BETA_CLEAR, K_PSI,
    KOSCHMIEDER, MAX_VISIBILITY_M,
};
pub use radar::{attach_radar_velocities, radar_scan, sonar_scan};
pub use rng::{SensorStream, StreamLabel};

/// Reporting sensor. Declaration order is the association tie-break order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Radar,
    EoIr,
    EoVis,
    Ais,
    Sonar,
}

impl Source {
    pub fn name(self) -> &'static str {
        match self {
            Source::Radar => "radar",
            Source::EoIr => "eo_ir",
            Source::EoVis => "eo_vis",
            Source::Ais => "ais",
            Source::Sonar => "sonar",
        }
    }

    pub fn is_eo(self) -> bool {
        matches!(self, Source::EoIr | Source::EoVis)
    }
}

/// One sensor's report of one object.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Detection {
    pub source: Source,
    pub t_s: f64,
    /// Self-reported identity; only AIS carries one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub object_hint: Option<String>,
    pub position_m: Vec2,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub velocity_mps: Option<Vec2>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size_class_estimate: Option<SizeClass>,
    pub confidence: f64,
    /// Simulation ground truth, kept for scoring. The fusion pipeline never reads it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truth_id: Option<String>,
}

/// Detection probability per size class.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassProbabilities {
    pub small: f64,
    pub medium: f64,
    pub large: f64,
}

impl ClassProbabilities {
    pub fn uniform(p: f64) -> Self {
        Self {
            small: p,
            medium: p,
            large: p,
        }
    }

    pub fn get(&self, class: SizeClass) -> f64 {
        match class {
            SizeClass::Small => self.small,
            SizeClass::Medium => self.medium,
            SizeClass::Large => self.large,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadarConfig {
    pub r_min_m: f64,
    pub r_max_m: f64,
    pub sigma_pos_m: f64,
    pub p_det: ClassProbabilities,
}

impl Default for RadarConfig {
    fn default() -> Self {
        Self {
            r_min_m: 2_000.0,
            r_max_m: 200_000.0,
            sigma_pos_m: 5.0,
            p_det: ClassProbabilities {
                small: 0.3,
                medium: 0.9,
                large: 0.99,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SonarConfig {
    pub r_max_m: f64,
    pub sigma_pos_m: f64,
    pub p_det: f64,
    pub submerged_only: bool,
}

impl Default for SonarConfig {
    fn default() -> Self {
        Self {
            r_max_m: 1_000.0,
            sigma_pos_m: 10.0,
            p_det: 0.9,
            submerged_only: true,
        }
    }
}

/// Electro-optical cameras. Field of view is the full circle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EoConfig {
    pub hw_range_m: f64,
    /// Contrast threshold below which a target is lost in the haze.
    pub epsilon_contrast: f64,
    /// IR extinction as a fraction of visible-band extinction.
    pub alpha_ir: f64,
}

impl Default for EoConfig {
    fn default() -> Self {
        Self {
            hw_range_m: 12_000.0,
            epsilon_contrast: 0.05,
            alpha_ir: 0.4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SensorConfig {
    pub radar: RadarConfig,
    pub sonar: SonarConfig,
    pub eo: EoConfig,
    pub weather_noise: WeatherNoise,
}

impl SensorConfig {
    pub fn validate(&self) -> Result<()> {
        let probs = [
            self.radar.p_det.small,
            self.radar.p_det.medium,
            self.radar.p_det.large,
            self.sonar.p_det,
        ];
        if !(self.radar.r_min_m < self.radar.r_max_m) {
            return Err(Error::Domain("radar r_min_m must be below r_max_m".into()));
        }
        if !(self.eo.epsilon_contrast > 0.0 && self.eo.epsilon_contrast < 1.0) {
            return Err(Error::Domain("epsilon_contrast must be in (0, 1)".into()));
        }
        if !(self.eo.alpha_ir > 0.0 && self.eo.alpha_ir <= 1.0) {
            return Err(Error::Domain("alpha_ir must be in (0, 1]".into()));
        }
        if probs.iter().any(|p| !(0.0..=1.0).contains(p)) {
            return Err(Error::Domain("detection probabilities must be in [0, 1]".into()));
        }
        Ok(())
    }
}

/// An observable object at one instant, with the ground truth sensors key off.
#[derive(Debug, Clone, PartialEq)]
pub struct Target {
    pub id: String,
    pub position_m: Vec2,
    pub velocity_mps: Vec2,
    pub size_class: SizeClass,
    pub contrast: f64,
    pub submerged: bool,
}

/// Everything that can be sensed at one tick, sorted by id.
#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    pub t_s: f64,
    pub targets: Vec<Target>,
}

impl Scene {
    pub fn new(world: &WorldState, scenario: &Scenario) -> Self {
        let mut targets: Vec<Target> = scenario
            .vessels
            .iter()
            .filter_map(|spec| {
                let state = world.vessel_states.get(&spec.id)?;
                Some(Target {
                    id: spec.id.clone(),
                    position_m: state.position_m,
                    velocity_mps: state.velocity_mps,
                    size_class: spec.size_class,
                    contrast: spec.contrast(),
                    submerged: false,
                })
            })
            .collect();
        targets.extend(scenario.obstacles.iter().enumerate().map(|(i, o)| {
            let class = obstacle_class(o);
            Target {
                id: Obstacle::id(i),
                position_m: o.position_m,
                velocity_mps: Vec2::ZERO,
                size_class: class,
                contrast: class.default_contrast(),
                submerged: o.submerged,
            }
        }));
        targets.sort_by(|a, b| a.id.cmp(&b.id));
        Self {
            t_s: world.t_s,
            targets,
        }
    }
}

fn obstacle_class(obstacle: &Obstacle) -> SizeClass {
    if obstacle.extent_m < 10.0 {
        SizeClass::Small
    } else if obstacle.extent_m < 50.0 {
        SizeClass::Medium
    } else {
        SizeClass::Large
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        SensorConfig::default().validate().unwrap();
        let mut bad = SensorConfig::default();
        bad.radar.r_min_m = 300_000.0;
        assert!(bad.validate().is_err());
        let mut bad = SensorConfig::default();
        bad.eo.alpha_ir = 0.0;
        assert!(bad.validate().is_err());
    }

    #[test]
    fn source_order_matches_tie_break() {
        let mut s = vec![Source::Sonar, Source::Ais, Source::EoVis, Source::EoIr, Source::Radar];
        s.sort();
        assert_eq!(
            s,
            [Source::Radar, Source::EoIr, Source::EoVis, Source::Ais, Source::Sonar]
        );
    }
}
