//! The weather dictionary: feature extraction from sensor history, template
//! matching and blending, the ranked state network, and online learning.

mod detect;
mod features;
mod network;
mod template;

pub use detect::{detect_weather, template_distance, Matched, WeatherAssessment};
pub use features::{extract_features, extract_features_held, WeatherFeatureVector};
pub use network::{forecast, rank_templates, RECENT_UPDATE_HORIZON_S};
pub use template::{bootstrap_network, load_network, Thresholds, WeatherStateNetwork, WeatherTemplate};
