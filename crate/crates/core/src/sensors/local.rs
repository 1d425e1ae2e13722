use serde::{Deserialize, Serialize};

use super::SensorStream;
use crate::world::{Channel, WeatherSample};

/// Absolute noise standard deviation per weather channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeatherNoise {
    pub psi: f64,
    pub rain: f64,
    pub wind: f64,
    pub humidity: f64,
    pub luminance: f64,
}

impl WeatherNoise {
    pub const ZERO: WeatherNoise = WeatherNoise {
        psi: 0.0,
        rain: 0.0,
        wind: 0.0,
        humidity: 0.0,
        luminance: 0.0,
    };

    pub fn std(&self, channel: Channel) -> f64 {
        match channel {
            Channel::Aerosol => self.psi,
            Channel::Rain => self.rain,
            Channel::Wind => self.wind,
            Channel::Humidity => self.humidity,
            Channel::Luminance => self.luminance,
        }
    }
}

impl Default for WeatherNoise {
    fn default() -> Self {
        Self {
            psi: 5.0,
            rain: 0.2,
            wind: 0.3,
            humidity: 1.0,
            luminance: 50.0,
        }
    }
}

/// One noisy reading of one channel, clamped to the channel's physical range.
pub fn read_channel(
    truth: &WeatherSample,
    channel: Channel,
    noise: &WeatherNoise,
    rng: &mut SensorStream,
) -> f64 {
    let raw = truth.get(channel) + noise.std(channel) * rng.standard_normal();
    match channel {
        Channel::Humidity => raw.clamp(0.0, 100.0),
        _ => raw.max(0.0),
    }
}

/// Reads all five channels in feature order.
pub fn weather_sensors_read(
    truth: &WeatherSample,
    noise: &WeatherNoise,
    rng: &mut SensorStream,
) -> WeatherSample {
    WeatherSample::from_array(Channel::ALL.map(|c| read_channel(truth, c, noise, rng)))
}
