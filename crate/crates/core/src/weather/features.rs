use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::manager::{HistoryBuffer, WeatherHistory};
use crate::world::Channel;

/// Windowed channel means in feature order (psi, rain, wind, humidity, luminance).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeatherFeatureVector(pub [f64; 5]);

impl WeatherFeatureVector {
    pub fn get(&self, channel: Channel) -> f64 {
        self.0[channel.index()]
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|v| v.is_finite())
    }
}

fn window_mean(buffer: &HistoryBuffer, lo: f64, hi: f64) -> Option<f64> {
    let (sum, n) = buffer
        .iter()
        .filter(|&(t, _)| t >= lo - 1e-9 && t <= hi + 1e-9)
        .fold((0.0, 0usize), |(s, n), (_, v)| (s + v, n + 1));
    (n > 0).then(|| sum / n as f64)
}

/// Per-channel mean over samples stamped in `[now − window_s, now]`.
pub fn extract_features(
    history: &WeatherHistory,
    window_s: f64,
    now_t: f64,
) -> Result<WeatherFeatureVector> {
    let mut out = [0.0; 5];
    for channel in Channel::ALL {
        out[channel.index()] = window_mean(history.channel(channel), now_t - window_s, now_t)
            .ok_or_else(|| Error::EmptyWindow(channel.name().to_string()))?;
    }
    Ok(WeatherFeatureVector(out))
}

/// Like [`extract_features`], but a slowly polled channel with nothing in the
/// window contributes its latest reading instead of failing.
pub fn extract_features_held(
    history: &WeatherHistory,
    window_s: f64,
    now_t: f64,
) -> Result<WeatherFeatureVector> {
    let mut out = [0.0; 5];
    for channel in Channel::ALL {
        let buffer = history.channel(channel);
        out[channel.index()] = window_mean(buffer, now_t - window_s, now_t)
            .or_else(|| buffer.latest().map(|(_, v)| v))
            .ok_or_else(|| Error::EmptyWindow(channel.name().to_string()))?;
    }
    Ok(WeatherFeatureVector(out))
}
