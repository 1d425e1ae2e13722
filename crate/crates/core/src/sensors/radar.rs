//! Radar and sonar share one kernel: a range gate, a Bernoulli detection draw,
//! and Gaussian position error truncated at five sigma.

use super::{Detection, Scene, SensorConfig, SensorStream, Source, Target};
use crate::geometry::Vec2;

const NOISE_CLIP_SIGMAS: f64 = 5.0;

struct Kernel<'a> {
    source: Source,
    r_min_m: f64,
    r_max_m: f64,
    sigma_pos_m: f64,
    p_det: &'a dyn Fn(&Target) -> f64,
}

impl Kernel<'_> {
    // Each candidate consumes exactly three draws whether or not it is in range,
    // so the stream stays aligned across geometries and weather.
    fn scan<'t>(
        &self,
        scene: &Scene,
        candidates: impl Iterator<Item = &'t Target>,
        own_pos: Vec2,
        rng: &mut SensorStream,
    ) -> Vec<Detection> {
        let mut out = Vec::new();
        for target in candidates {
            let u = rng.uniform();
            let nx = rng.standard_normal().clamp(-NOISE_CLIP_SIGMAS, NOISE_CLIP_SIGMAS);
            let ny = rng.standard_normal().clamp(-NOISE_CLIP_SIGMAS, NOISE_CLIP_SIGMAS);
            let range = target.position_m.distance(own_pos);
            let p = (self.p_det)(target);
            if range < self.r_min_m || range > self.r_max_m || u >= p {
                continue;
            }
            out.push(Detection {
                source: self.source,
                t_s: scene.t_s,
                object_hint: None,
                position_m: target.position_m + Vec2::new(nx, ny) * self.sigma_pos_m,
                velocity_mps: None,
                size_class_estimate: Some(target.size_class),
                confidence: p,
                truth_id: Some(target.id.clone()),
            });
        }
        out
    }
}

/// All-weather surface search. Blind inside `r_min_m` (the shadow region).
pub fn radar_scan(
    scene: &Scene,
    own_pos: Vec2,
    cfg: &SensorConfig,
    rng: &mut SensorStream,
) -> Vec<Detection> {
    let p_det = |t: &Target| cfg.radar.p_det.get(t.size_class);
    Kernel {
        source: Source::Radar,
        r_min_m: cfg.radar.r_min_m,
        r_max_m: cfg.radar.r_max_m,
        sigma_pos_m: cfg.radar.sigma_pos_m,
        p_det: &p_det,
    }
    .scan(scene, scene.targets.iter().filter(|t| !t.submerged), own_pos, rng)
}

/// Short-range underwater search, no shadow region.
pub fn sonar_scan(
    scene: &Scene,
    own_pos: Vec2,
    cfg: &SensorConfig,
    rng: &mut SensorStream,
) -> Vec<Detection> {
    let p_det = |_: &Target| cfg.sonar.p_det;
    let submerged_only = cfg.sonar.submerged_only;
    Kernel {
        source: Source::Sonar,
        r_min_m: 0.0,
        r_max_m: cfg.sonar.r_max_m,
        sigma_pos_m: cfg.sonar.sigma_pos_m,
        p_det: &p_det,
    }
    .scan(
        scene,
        scene.targets.iter().filter(|t| t.submerged || !submerged_only),
        own_pos,
        rng,
    )
}

/// Two-scan differencing: pairs each current radar return with the nearest
/// unclaimed return from the previous scan within `gate_m` and sets its velocity.
pub fn attach_radar_velocities(
    previous: &[Detection],
    current: &mut [Detection],
    dt_s: f64,
    gate_m: f64,
) {
    let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
    for (ci, c) in current.iter().enumerate() {
        if c.source != Source::Radar {
            continue;
        }
        for (pi, p) in previous.iter().enumerate() {
            if p.source != Source::Radar {
                continue;
            }
            let d = c.position_m.distance(p.position_m);
            if d <= gate_m {
                pairs.push((d, ci, pi));
            }
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let mut used_current = vec![false; current.len()];
    let mut used_previous = vec![false; previous.len()];
    for (_, ci, pi) in pairs {
        if used_current[ci] || used_previous[pi] {
            continue;
        }
        used_current[ci] = true;
        used_previous[pi] = true;
        let delta = current[ci].position_m - previous[pi].position_m;
        current[ci].velocity_mps = Some(delta * (1.0 / dt_s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sensors::StreamLabel;
    use crate::world::SizeClass;

    fn target(id: &str, x: f64, class: SizeClass, submerged: bool) -> Target {
        Target {
            id: id.into(),
            position_m: Vec2::new(x, 0.0),
            velocity_mps: Vec2::ZERO,
            size_class: class,
            contrast: class.default_contrast(),
            submerged,
        }
    }

    fn hit_rate(scene: &Scene, trials: usize, sonar: bool) -> f64 {
        let cfg = SensorConfig::default();
        let mut rng = SensorStream::new(11, StreamLabel::Radar);
        let hits: usize = (0..trials)
            .map(|_| {
                if sonar {
                    sonar_scan(scene, Vec2::ZERO, &cfg, &mut rng).len()
                } else {
                    radar_scan(scene, Vec2::ZERO, &cfg, &mut rng).len()
                }
            })
            .sum();
        hits as f64 / trials as f64
    }

    #[test]
    fn shadow_region_and_max_range() {
        let shadow = Scene { t_s: 0.0, targets: vec![target("a", 1_500.0, SizeClass::Large, false)] };
        assert_eq!(hit_rate(&shadow, 2_000, false), 0.0);
        let beyond = Scene { t_s: 0.0, targets: vec![target("a", 250_000.0, SizeClass::Large, false)] };
        assert_eq!(hit_rate(&beyond, 2_000, false), 0.0);
    }

    #[test]
    fn large_target_detection_rate() {
        let scene = Scene { t_s: 0.0, targets: vec![target("a", 10_000.0, SizeClass::Large, false)] };
        let rate = hit_rate(&scene, 10_000, false);
        assert!((rate - 0.99).abs() <= 0.01, "rate {rate}");
    }

    #[test]
    fn sonar_sees_only_submerged_within_range() {
        let sub = Scene { t_s: 0.0, targets: vec![target("rock", 500.0, SizeClass::Small, true)] };
        let rate = hit_rate(&sub, 10_000, true);
        assert!((rate - 0.9).abs() <= 0.01, "rate {rate}");
        let surface = Scene { t_s: 0.0, targets: vec![target("boat", 500.0, SizeClass::Small, false)] };
        assert_eq!(hit_rate(&surface, 1_000, true), 0.0);
        let far = Scene { t_s: 0.0, targets: vec![target("rock", 5_000.0, SizeClass::Small, true)] };
        assert_eq!(hit_rate(&far, 1_000, true), 0.0);
        // radar never reports submerged objects
        assert_eq!(hit_rate(&Scene { t_s: 0.0, targets: vec![target("rock", 5_000.0, SizeClass::Large, true)] }, 100, false), 0.0);
    }

    #[test]
    fn velocity_from_two_scans() {
        let det = |x: f64| Detection {
            source: Source::Radar,
            t_s: 0.0,
            object_hint: None,
            position_m: Vec2::new(x, 0.0),
            velocity_mps: None,
            size_class_estimate: None,
            confidence: 1.0,
            truth_id: None,
        };
        let prev = vec![det(1_000.0), det(5_000.0)];
        let mut cur = vec![det(5_010.0), det(990.0), det(9_000.0)];
        attach_radar_velocities(&prev, &mut cur, 1.0, 200.0);
        assert_eq!(cur[0].velocity_mps, Some(Vec2::new(10.0, 0.0)));
        assert_eq!(cur[1].velocity_mps, Some(Vec2::new(-10.0, 0.0)));
        assert_eq!(cur[2].velocity_mps, None);
    }
}
