use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::weather::{WeatherAssessment, WeatherStateNetwork};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DynamicRange {
    Small,
    Large,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Focus {
    Close,
    Long,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ColorMode {
    Vivid,
    Normal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EoSettings {
    pub dynamic_range: DynamicRange,
    pub focus: Focus,
    pub gain: f64,
    pub gamma: f64,
    pub color_mode: ColorMode,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadarSettings {
    pub calibration_profile: String,
}

/// Camera and radar settings for a weather situation. The simulated sensors do
/// not act on these; they are logged so the management decisions can be checked.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SettingsDirective {
    pub eo_vis: EoSettings,
    pub eo_ir: EoSettings,
    pub radar: RadarSettings,
}

impl SettingsDirective {
    pub fn is_valid(&self) -> bool {
        [self.eo_vis, self.eo_ir]
            .iter()
            .all(|s| s.gain > 0.0 && s.gamma > 0.0)
    }

    pub fn clear(profile: &str) -> Self {
        Self {
            eo_vis: EoSettings {
                dynamic_range: DynamicRange::Large,
                focus: Focus::Long,
                gain: 1.0,
                gamma: 1.0,
                color_mode: ColorMode::Vivid,
            },
            eo_ir: EoSettings {
                dynamic_range: DynamicRange::Large,
                focus: Focus::Long,
                gain: 1.0,
                gamma: 1.0,
                color_mode: ColorMode::Normal,
            },
            radar: RadarSettings {
                calibration_profile: profile.to_string(),
            },
        }
    }

    pub fn hazy(profile: &str) -> Self {
        Self {
            eo_vis: EoSettings {
                dynamic_range: DynamicRange::Small,
                focus: Focus::Close,
                gain: 1.0,
                gamma: 2.2,
                color_mode: ColorMode::Normal,
            },
            eo_ir: EoSettings {
                dynamic_range: DynamicRange::Large,
                focus: Focus::Long,
                gain: 1.0,
                gamma: 2.2,
                color_mode: ColorMode::Normal,
            },
            radar: RadarSettings {
                calibration_profile: profile.to_string(),
            },
        }
    }
}

/// Settings of the matched template; a blend takes its heaviest parent's.
pub fn sensor_settings(
    assessment: &WeatherAssessment,
    network: &WeatherStateNetwork,
) -> Result<SettingsDirective> {
    Ok(network.template(assessment.primary())?.settings.clone())
}
