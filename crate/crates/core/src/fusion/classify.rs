use super::{Category, Track};
use crate::sensors::{RadarConfig, Source};
use crate::world::SizeClass;

const RECENT_TICKS: u64 = 5;
const PERSISTENT_SAMPLES: usize = 3;
const STATIONARY_SAMPLES: usize = 10;
const STATIONARY_SPEED_MPS: f64 = 0.2;

/// Names a contact that no other source corroborated, from its short history.
///
/// Rules in order, first match wins:
/// 1. seen once in the last five ticks, by one source: spurious;
/// 2. cameras only, persistent, and either inside the radar shadow or small: small object;
/// 3. essentially motionless over ten or more samples: fixed structure;
/// 4. sonar only: underwater;
/// 5. otherwise: small object.
pub fn classify_unmatched(track: &Track, radar: &RadarConfig) -> Category {
    let last = track.last();
    let recent: Vec<_> = track
        .samples
        .iter()
        .filter(|s| s.tick + RECENT_TICKS > last.tick)
        .collect();
    if recent.len() == 1 && recent[0].sources.len() == 1 {
        return Category::Spurious;
    }

    let only = |pred: fn(Source) -> bool| {
        track
            .samples
            .iter()
            .all(|s| s.sources.iter().all(|&src| pred(src)))
    };
    let eo_only = only(Source::is_eo);
    let in_shadow = last.range_m < radar.r_min_m;
    let small = track
        .samples
        .iter()
        .any(|s| s.size_class == Some(SizeClass::Small));
    if eo_only && (in_shadow || small) && track.samples.len() >= PERSISTENT_SAMPLES {
        return Category::SmallObject;
    }

    if track.samples.len() >= STATIONARY_SAMPLES && track.mean_speed() < STATIONARY_SPEED_MPS {
        return Category::FixedStructure;
    }

    if only(|s| s == Source::Sonar) {
        return Category::Underwater;
    }
    Category::SmallObject
}
