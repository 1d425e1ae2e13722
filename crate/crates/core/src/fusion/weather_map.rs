use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::geometry::Vec2;
use crate::weather::WeatherAssessment;
use crate::world::WeatherSample;

const IDW_EPS_M: f64 = 1.0;
const TIE_EPS: f64 = 1e-12;

/// Polar grid around the own ship.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub bearings: usize,
    pub radii: usize,
    pub max_radius_m: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            bearings: 16,
            radii: 8,
            max_radius_m: 20_000.0,
        }
    }
}

impl GridSpec {
    pub fn bearing(&self, i: usize) -> f64 {
        std::f64::consts::TAU * i as f64 / self.bearings as f64
    }

    pub fn radius(&self, j: usize) -> f64 {
        self.max_radius_m * (j + 1) as f64 / self.radii as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeveritySummary {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeatherPicture {
    pub local: WeatherAssessment,
    pub forecast: BTreeMap<String, f64>,
    /// Severity over the grid; absent without remote reports.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<SeveritySummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pocket_bearing_rad: Option<f64>,
}

/// Normalized severity of one reading: haze, rain and wind terms, each in [0, 1].
pub fn severity(sample: &WeatherSample) -> f64 {
    (sample.psi / 230.0).clamp(0.0, 1.0)
        + (sample.rain_mmph / 10.0).clamp(0.0, 1.0)
        + (sample.wind_mps / 20.0).clamp(0.0, 1.0)
}

fn interpolate(at: Vec2, reports: &[(Vec2, f64)]) -> f64 {
    let (num, den) = reports.iter().fold((0.0, 0.0), |(num, den), (p, s)| {
        let w = 1.0 / (at.distance(*p) + IDW_EPS_M).powi(2);
        (num + w * s, den + w)
    });
    num / den
}

/// Builds the spatial weather picture from remote annexes and finds the
/// bearing of least severity.
pub fn weather_awareness(
    local: &WeatherAssessment,
    remote: &[(Vec2, WeatherSample)],
    forecast: &BTreeMap<String, f64>,
    own_pos: Vec2,
    grid: &GridSpec,
) -> WeatherPicture {
    let mut picture = WeatherPicture {
        local: local.clone(),
        forecast: forecast.clone(),
        map: None,
        pocket_bearing_rad: None,
    };
    if remote.is_empty() || grid.bearings == 0 || grid.radii == 0 {
        return picture;
    }
    let reports: Vec<(Vec2, f64)> = remote.iter().map(|(p, s)| (*p, severity(s))).collect();

    let mut all = Vec::with_capacity(grid.bearings * grid.radii);
    let mut best: Option<(usize, f64)> = None;
    for i in 0..grid.bearings {
        let dir = Vec2::from_bearing(grid.bearing(i));
        let ray: Vec<f64> = (0..grid.radii)
            .map(|j| interpolate(own_pos + dir * grid.radius(j), &reports))
            .collect();
        let mean = ray.iter().sum::<f64>() / ray.len() as f64;
        all.extend(ray);
        if best.is_none_or(|(_, m)| mean < m - TIE_EPS) {
            best = Some((i, mean));
        }
    }
    picture.map = Some(SeveritySummary {
        min: all.iter().copied().fold(f64::INFINITY, f64::min),
        max: all.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        mean: all.iter().sum::<f64>() / all.len() as f64,
    });
    picture.pocket_bearing_rad = best.map(|(i, _)| grid.bearing(i));
    picture
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weather::Matched;

    fn local() -> WeatherAssessment {
        WeatherAssessment {
            matched: Matched::Single("hazy".into()),
            distance: 0.5,
            novel: false,
            t_s: 0.0,
        }
    }

    fn reading(psi: f64) -> WeatherSample {
        WeatherSample::from_array([psi, 0.0, 3.0, 75.0, 20_000.0])
    }

    #[test]
    fn severity_terms_are_clipped() {
        assert!((severity(&reading(230.0)) - 1.15).abs() < 1e-12);
        let wild = WeatherSample::from_array([500.0, 40.0, 60.0, 100.0, 0.0]);
        assert_eq!(severity(&wild), 3.0);
    }

    #[test]
    fn no_remote_reports_means_no_pocket() {
        let p = weather_awareness(&local(), &[], &BTreeMap::new(), Vec2::ZERO, &GridSpec::default());
        assert!(p.pocket_bearing_rad.is_none());
        assert!(p.map.is_none());
    }

    #[test]
    fn uniform_field_ties_to_north() {
        let remote: Vec<_> = [[5_000.0, 0.0], [-5_000.0, 0.0], [0.0, 7_000.0]]
            .into_iter()
            .map(|p| (Vec2::from(p), reading(230.0)))
            .collect();
        let p = weather_awareness(&local(), &remote, &BTreeMap::new(), Vec2::ZERO, &GridSpec::default());
        assert_eq!(p.pocket_bearing_rad, Some(0.0));
        let m = p.map.unwrap();
        assert!((m.min - 1.15).abs() < 1e-9 && (m.max - 1.15).abs() < 1e-9);
    }

    #[test]
    fn clean_station_due_north_draws_the_pocket() {
        let remote = vec![
            (Vec2::new(0.0, 10_000.0), reading(30.0)),
            (Vec2::new(10_000.0, 0.0), reading(230.0)),
            (Vec2::new(0.0, -10_000.0), reading(230.0)),
            (Vec2::new(-10_000.0, 0.0), reading(230.0)),
        ];
        let p = weather_awareness(&local(), &remote, &BTreeMap::new(), Vec2::ZERO, &GridSpec::default());
        assert_eq!(p.pocket_bearing_rad, Some(0.0));
        let m = p.map.unwrap();
        assert!(m.min < m.mean && m.mean < m.max);
    }
}
