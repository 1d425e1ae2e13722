//! Haze attenuation and the contrast-threshold camera model.
//!
//! Meteorological visibility follows Koschmieder's law `V = 3.912 / β`. The
//! extinction coefficient grows linearly with the aerosol index above a clear-air
//! floor, calibrated so that PSI 230 gives 5 km and clear air gives the 10 km
//! ceiling. A target of inherent contrast `C0` at range `d` is seen while its
//! apparent contrast `C0·exp(−β·d)` stays above the camera threshold `ε`.

use serde::{Deserialize, Serialize};

use super::{Detection, Scene, SensorConfig, Source};
use crate::error::{Error, Result};
use crate::geometry::Vec2;

/// Koschmieder constant, `ln(1/0.02)`.
pub const KOSCHMIEDER: f64 = 3.912;
/// Visibility treated as unlimited.
pub const MAX_VISIBILITY_M: f64 = 10_000.0;
/// Clear-air extinction, m⁻¹.
pub const BETA_CLEAR: f64 = KOSCHMIEDER / MAX_VISIBILITY_M;
/// Extinction per PSI unit, m⁻¹: PSI 230 ↔ 5 km.
pub const K_PSI: f64 = KOSCHMIEDER / (5_000.0 * 230.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Band {
    Vis,
    Ir,
}

impl Band {
    pub fn source(self) -> Source {
        match self {
            Band::Vis => Source::EoVis,
            Band::Ir => Source::EoIr,
        }
    }
}

fn check_psi(psi: f64) -> Result<()> {
    if psi >= 0.0 && psi.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("aerosol index must be >= 0 (got {psi})")))
    }
}

/// Extinction coefficient in a band, m⁻¹.
pub fn extinction(psi: f64, band: Band, alpha_ir: f64) -> Result<f64> {
    check_psi(psi)?;
    let beta_vis = BETA_CLEAR.max(K_PSI * psi);
    Ok(match band {
        Band::Vis => beta_vis,
        Band::Ir => alpha_ir * beta_vis,
    })
}

/// Visible-band meteorological visibility in meters, in (0, 10 000].
pub fn visibility_from_aerosol(psi: f64) -> Result<f64> {
    let beta = extinction(psi, Band::Vis, 1.0)?;
    if beta <= BETA_CLEAR {
        return Ok(MAX_VISIBILITY_M);
    }
    Ok((KOSCHMIEDER / beta).min(MAX_VISIBILITY_M))
}

/// Effective IR-band visibility, `3.912 / β_ir`. Not capped.
pub fn ir_visibility(psi: f64, alpha_ir: f64) -> Result<f64> {
    Ok(KOSCHMIEDER / extinction(psi, Band::Ir, alpha_ir)?)
}

/// Camera sweep over the full circle. Deterministic: no noise, no misses beyond
/// the contrast threshold. Submerged objects are invisible.
pub fn eo_scan(
    scene: &Scene,
    own_pos: Vec2,
    cfg: &SensorConfig,
    band: Band,
    psi: f64,
) -> Result<Vec<Detection>> {
    let beta = extinction(psi, band, cfg.eo.alpha_ir)?;
    let eps = cfg.eo.epsilon_contrast;
    Ok(scene
        .targets
        .iter()
        .filter(|t| !t.submerged)
        .filter_map(|t| {
            let range = t.position_m.distance(own_pos);
            let contrast_limit = (t.contrast / eps).ln() / beta;
            if range > cfg.eo.hw_range_m.min(contrast_limit) {
                return None;
            }
            Some(Detection {
                source: band.source(),
                t_s: scene.t_s,
                object_hint: None,
                position_m: t.position_m,
                velocity_mps: None,
                size_class_estimate: Some(t.size_class),
                confidence: (t.contrast * (-beta * range).exp()).clamp(0.0, 1.0),
                truth_id: Some(t.id.clone()),
            })
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sensors::Target;
    use crate::world::SizeClass;

    fn scene_with(contrast: f64, at: [f64; 2]) -> Scene {
        Scene {
            t_s: 0.0,
            targets: vec![Target {
                id: "t".into(),
                position_m: at.into(),
                velocity_mps: Vec2::ZERO,
                size_class: SizeClass::Small,
                contrast,
                submerged: false,
            }],
        }
    }

    #[test]
    fn visibility_anchors() {
        assert!((visibility_from_aerosol(230.0).unwrap() - 5_000.0).abs() < 1e-6);
        assert_eq!(visibility_from_aerosol(0.0).unwrap(), 10_000.0);
        assert!((visibility_from_aerosol(460.0).unwrap() - 2_500.0).abs() < 1e-6);
        assert!(matches!(visibility_from_aerosol(-1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn haze_hides_small_vessel_from_vis_only() {
        let cfg = SensorConfig::default();
        // Hand values: ln(0.4/0.05)/7.824e-4 = 2657.8 m, and /0.4 of that β = 6644.6 m.
        let scene = scene_with(0.4, [4_500.0, 0.0]);
        assert!(eo_scan(&scene, Vec2::ZERO, &cfg, Band::Vis, 230.0).unwrap().is_empty());
        assert_eq!(eo_scan(&scene, Vec2::ZERO, &cfg, Band::Ir, 230.0).unwrap().len(), 1);

        let edge_vis = scene_with(0.4, [2_657.0, 0.0]);
        assert_eq!(eo_scan(&edge_vis, Vec2::ZERO, &cfg, Band::Vis, 230.0).unwrap().len(), 1);
        let past_vis = scene_with(0.4, [2_659.0, 0.0]);
        assert!(eo_scan(&past_vis, Vec2::ZERO, &cfg, Band::Vis, 230.0).unwrap().is_empty());
        let past_ir = scene_with(0.4, [6_646.0, 0.0]);
        assert!(eo_scan(&past_ir, Vec2::ZERO, &cfg, Band::Ir, 230.0).unwrap().is_empty());
    }

    #[test]
    fn near_field_and_hardware_limit() {
        let cfg = SensorConfig::default();
        let near = scene_with(1.0, [100.0, 0.0]);
        for band in [Band::Vis, Band::Ir] {
            let d = eo_scan(&near, Vec2::ZERO, &cfg, band, 0.0).unwrap();
            assert_eq!(d.len(), 1);
            assert_eq!(d[0].position_m, Vec2::new(100.0, 0.0));
            assert!(d[0].confidence > 0.9 && d[0].confidence <= 1.0);
        }
        let far = scene_with(1.0, [12_500.0, 0.0]);
        for band in [Band::Vis, Band::Ir] {
            assert!(eo_scan(&far, Vec2::ZERO, &cfg, band, 0.0).unwrap().is_empty());
        }
    }

    #[test]
    fn ir_visibility_is_vis_over_alpha() {
        assert!((ir_visibility(230.0, 0.4).unwrap() - 12_500.0).abs() < 1e-6);
    }
}
