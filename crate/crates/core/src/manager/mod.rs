//! Sensor management: polling schedules, camera/radar settings, range-zoned
//! fusion weights, and the bounded per-channel history the weather engine reads.

mod history;
mod schedule;
mod settings;
mod weights;

pub use history::{HistoryBuffer, WeatherHistory, HISTORY_CAPACITY};
pub use schedule::{build_schedule, ScheduleEntry, SensorSchedule};
pub use settings::{
    sensor_settings, ColorMode, DynamicRange, EoSettings, Focus, RadarSettings, SettingsDirective,
};
pub use weights::{build_weights, SourceWeights, WeightFamily, WeightProfile, WeightRecipe, Zone, AIS_WEIGHT};
