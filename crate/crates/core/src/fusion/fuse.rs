use crate::geometry::Vec2;
use crate::manager::WeightProfile;
use crate::sensors::{Detection, Source};

/// Extra factor on the AIS weight so that AIS outweighs any single zone weight.
pub const AIS_MULTIPLIER: f64 = 2.0;

/// Weighted position of a group, each report weighted by its source's zone
/// weight at its own range. Velocity comes from AIS when present, otherwise from
/// radar scan differencing.
pub fn fuse_position(group: &[Detection], own_pos: Vec2, weights: &WeightProfile) -> (Vec2, Option<Vec2>) {
    assert!(!group.is_empty(), "cannot fuse an empty group");
    let weight_of = |d: &Detection| match d.source {
        Source::Ais => weights.ais_weight * AIS_MULTIPLIER,
        s => weights.weight(s, d.position_m.distance(own_pos)),
    };
    let total: f64 = group.iter().map(weight_of).sum();
    let position = if total > 0.0 {
        group
            .iter()
            .fold(Vec2::ZERO, |acc, d| acc + d.position_m * weight_of(d))
            * (1.0 / total)
    } else {
        group.iter().fold(Vec2::ZERO, |acc, d| acc + d.position_m) * (1.0 / group.len() as f64)
    };
    let velocity = [Source::Ais, Source::Radar].iter().find_map(|s| {
        group
            .iter()
            .find(|d| d.source == *s)
            .and_then(|d| d.velocity_mps)
    });
    (position, velocity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manager::{SourceWeights, WeightFamily, WeightRecipe};
    use proptest::prelude::*;

    fn det(source: Source, x: f64, y: f64) -> Detection {
        Detection {
            source,
            t_s: 0.0,
            object_hint: None,
            position_m: Vec2::new(x, y),
            velocity_mps: None,
            size_class_estimate: None,
            confidence: 1.0,
            truth_id: None,
        }
    }

    fn flat(w: SourceWeights) -> WeightProfile {
        WeightProfile::from_recipe(
            &WeightRecipe {
                family: WeightFamily::Clear,
                zones: vec![w, w],
            },
            &[2_000.0],
        )
    }

    #[test]
    fn ais_dominates_by_hand() {
        // (60 * 0.9) / (2.0 + 0.9) = 18.6207
        let mut ais = det(Source::Ais, 0.0, 0.0);
        ais.velocity_mps = Some(Vec2::new(1.0, 2.0));
        let mut radar = det(Source::Radar, 60.0, 0.0);
        radar.velocity_mps = Some(Vec2::new(9.0, 9.0));
        let (p, v) = fuse_position(&[ais, radar], Vec2::new(0.0, -10_000.0), &flat(SourceWeights::new(0.0, 0.1, 0.9)));
        assert!((p.x - 54.0 / 2.9).abs() < 1e-12 && p.y == 0.0);
        assert!((p.x - 18.6).abs() < 0.05);
        assert_eq!(v, Some(Vec2::new(1.0, 2.0)));
    }

    #[test]
    fn single_and_symmetric_groups() {
        let w = flat(SourceWeights::new(0.5, 0.5, 0.0));
        let (p, v) = fuse_position(&[det(Source::EoVis, 7.0, 8.0)], Vec2::ZERO, &w);
        assert_eq!((p, v), (Vec2::new(7.0, 8.0), None));
        let (p, _) = fuse_position(&[det(Source::EoVis, 0.0, 0.0), det(Source::EoIr, 100.0, 0.0)], Vec2::ZERO, &w);
        assert_eq!(p, Vec2::new(50.0, 0.0));
    }

    #[test]
    fn zero_weights_fall_back_to_plain_mean() {
        let w = flat(SourceWeights::new(1.0, 0.0, 0.0));
        let (p, _) = fuse_position(&[det(Source::Radar, 0.0, 0.0), det(Source::Sonar, 10.0, 0.0)], Vec2::ZERO, &w);
        assert_eq!(p, Vec2::new(5.0, 0.0));
    }

    proptest! {
        // Within one zone the camera and radar weights sum to at most one, so the
        // AIS weight of two wins against any one other report, or against several
        // reports that agree on a position.
        #[test]
        fn fused_point_is_nearest_the_ais_report(
            wv in 0.0f64..1.0, wi in 0.0f64..1.0,
            offset in (-150.0f64..150.0, -150.0f64..150.0),
            n_others in 1usize..4,
        ) {
            prop_assume!(offset.0 != 0.0 || offset.1 != 0.0);
            let total = wv + wi;
            let (wv, wi) = if total > 1.0 { (wv / total, wi / total) } else { (wv, wi) };
            let w = flat(SourceWeights::new(wv, wi, 1.0 - wv - wi));
            let ais_pos = Vec2::new(5_000.0, 0.0);
            let other = ais_pos + Vec2::new(offset.0, offset.1);
            let mut group = vec![det(Source::Ais, ais_pos.x, ais_pos.y)];
            for src in [Source::Radar, Source::EoIr, Source::EoVis].into_iter().take(n_others) {
                group.push(det(src, other.x, other.y));
            }
            let (p, _) = fuse_position(&group, Vec2::ZERO, &w);
            prop_assert!(p.distance(ais_pos) < p.distance(other));
        }
    }
}
