//! Short per-object histories keyed by nearest-neighbor continuity. This is not
//! a filter: it only remembers where each fused object has been recently, which
//! is what contact classification and maneuver detection need.

use std::collections::{BTreeMap, VecDeque};

use crate::geometry::Vec2;
use crate::sensors::Source;
use crate::world::SizeClass;

/// Continuity gate per elapsed tick, meters.
pub const TRACK_GATE_M: f64 = 200.0;
const HISTORY_TICKS: usize = 30;
const MAX_COAST_TICKS: u64 = 10;
const VELOCITY_BASELINE: usize = 10;
const MIN_HEADING_SPEED_MPS: f64 = 2.0;

#[derive(Debug, Clone, PartialEq)]
pub struct TrackSample {
    pub tick: u64,
    pub t_s: f64,
    pub position_m: Vec2,
    /// Velocity the object reported about itself (AIS), if any.
    pub reported_velocity: Option<Vec2>,
    pub sources: Vec<Source>,
    pub size_class: Option<SizeClass>,
    pub range_m: f64,
    pub identity: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Track {
    pub fid: u64,
    pub first_seen_t: f64,
    pub samples: VecDeque<TrackSample>,
}

impl Track {
    pub fn last(&self) -> &TrackSample {
        self.samples.back().expect("tracks are never empty")
    }

    /// Samples stamped within the last `ticks` ticks up to and including `now_tick`.
    pub fn seen_within(&self, now_tick: u64, ticks: u64) -> usize {
        self.samples
            .iter()
            .filter(|s| s.tick + ticks > now_tick)
            .count()
    }

    fn velocity_at(&self, i: usize, min_baseline: usize) -> Option<Vec2> {
        let s = &self.samples[i];
        if let Some(v) = s.reported_velocity {
            return Some(v);
        }
        if i < min_baseline.max(1) {
            return None;
        }
        let j = i - VELOCITY_BASELINE.min(i);
        let base = &self.samples[j];
        let dt = s.t_s - base.t_s;
        (dt > 0.0).then(|| (s.position_m - base.position_m) * (1.0 / dt))
    }

    /// Best current velocity: the object's own report, else a finite difference
    /// over a few recent samples, else zero.
    pub fn velocity_estimate(&self) -> Vec2 {
        self.velocity_at(self.samples.len() - 1, 1)
            .unwrap_or(Vec2::ZERO)
    }

    /// Average speed between the first and last stored samples.
    pub fn mean_speed(&self) -> f64 {
        let (first, last) = (&self.samples[0], self.last());
        let dt = last.t_s - first.t_s;
        if dt <= 0.0 {
            return 0.0;
        }
        first.position_m.distance(last.position_m) / dt
    }

    /// Circular variance proxy of heading over the stored history, rad². Samples
    /// slower than 2 m/s, or without a full differencing baseline, are skipped.
    pub fn heading_variance(&self) -> f64 {
        let headings: Vec<f64> = (0..self.samples.len())
            .filter_map(|i| self.velocity_at(i, VELOCITY_BASELINE))
            .filter(|v| v.norm() > MIN_HEADING_SPEED_MPS)
            .map(Vec2::bearing)
            .collect();
        if headings.len() < 3 {
            return 0.0;
        }
        let (s, c) = headings
            .iter()
            .fold((0.0, 0.0), |(s, c), h| (s + h.sin(), c + h.cos()));
        let mean = s.atan2(c);
        headings
            .iter()
            .map(|h| {
                let d = (h - mean + std::f64::consts::PI).rem_euclid(std::f64::consts::TAU)
                    - std::f64::consts::PI;
                d * d
            })
            .sum::<f64>()
            / headings.len() as f64
    }
}

#[derive(Debug, Clone, Default)]
pub struct Tracker {
    next_fid: u64,
    tracks: BTreeMap<u64, Track>,
}

impl Tracker {
    pub fn track(&self, fid: u64) -> Option<&Track> {
        self.tracks.get(&fid)
    }

    pub fn tracks(&self) -> impl Iterator<Item = &Track> {
        self.tracks.values()
    }

    /// Attaches this tick's items to tracks and returns each item's fid.
    ///
    /// Items carrying an identity rejoin the track with that identity. The rest
    /// are matched greedily by distance within the continuity gate; anything left
    /// over starts a new track.
    pub fn update(&mut self, tick: u64, items: Vec<TrackSample>) -> Vec<u64> {
        let mut assigned: Vec<Option<u64>> = vec![None; items.len()];
        let mut claimed: Vec<u64> = Vec::new();

        for (i, item) in items.iter().enumerate() {
            let Some(id) = &item.identity else { continue };
            if let Some(track) = self
                .tracks
                .values()
                .find(|t| t.last().identity.as_ref() == Some(id) && !claimed.contains(&t.fid))
            {
                assigned[i] = Some(track.fid);
                claimed.push(track.fid);
            }
        }

        let mut pairs: Vec<(f64, usize, u64)> = Vec::new();
        for (i, item) in items.iter().enumerate() {
            if assigned[i].is_some() {
                continue;
            }
            for track in self.tracks.values() {
                let last = track.last();
                if claimed.contains(&track.fid) || last.tick >= tick {
                    continue;
                }
                if let (Some(a), Some(b)) = (&item.identity, &last.identity) {
                    if a != b {
                        continue;
                    }
                }
                let gate = TRACK_GATE_M * (tick - last.tick) as f64;
                let d = item.position_m.distance(last.position_m);
                if d <= gate {
                    pairs.push((d, i, track.fid));
                }
            }
        }
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
        for (_, i, fid) in pairs {
            if assigned[i].is_none() && !claimed.contains(&fid) {
                assigned[i] = Some(fid);
                claimed.push(fid);
            }
        }

        let mut fids = Vec::with_capacity(items.len());
        for (item, slot) in items.into_iter().zip(assigned) {
            let fid = match slot {
                Some(fid) => fid,
                None => {
                    let fid = self.next_fid;
                    self.next_fid += 1;
                    self.tracks.insert(
                        fid,
                        Track {
                            fid,
                            first_seen_t: item.t_s,
                            samples: VecDeque::new(),
                        },
                    );
                    fid
                }
            };
            let track = self.tracks.get_mut(&fid).expect("just inserted or matched");
            track.samples.push_back(item);
            if track.samples.len() > HISTORY_TICKS {
                track.samples.pop_front();
            }
            fids.push(fid);
        }

        self.tracks
            .retain(|_, t| tick.saturating_sub(t.last().tick) <= MAX_COAST_TICKS);
        fids
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn sample(tick: u64, x: f64, y: f64, sources: &[Source]) -> TrackSample {
        TrackSample {
            tick,
            t_s: tick as f64,
            position_m: Vec2::new(x, y),
            reported_velocity: None,
            sources: sources.to_vec(),
            size_class: None,
            range_m: Vec2::new(x, y).norm(),
            identity: None,
        }
    }

    #[test]
    fn continuity_within_gate() {
        let mut tr = Tracker::default();
        let a = tr.update(0, vec![sample(0, 0.0, 0.0, &[Source::Radar]), sample(0, 5_000.0, 0.0, &[Source::Radar])]);
        let b = tr.update(1, vec![sample(1, 5_010.0, 0.0, &[Source::Radar]), sample(1, 10.0, 0.0, &[Source::Radar])]);
        assert_eq!(a, [0, 1]);
        assert_eq!(b, [1, 0]);
        let c = tr.update(2, vec![sample(2, 900.0, 0.0, &[Source::Radar])]);
        assert_eq!(c, [2]);
    }

    #[test]
    fn identity_rejoins_across_gaps() {
        let mut tr = Tracker::default();
        let mut s = sample(0, 0.0, 0.0, &[Source::Ais]);
        s.identity = Some("v1".into());
        tr.update(0, vec![s.clone()]);
        s.tick = 3;
        s.t_s = 3.0;
        s.position_m = Vec2::new(2_000.0, 0.0);
        assert_eq!(tr.update(3, vec![s]), [0]);
    }

    #[test]
    fn stale_tracks_are_dropped() {
        let mut tr = Tracker::default();
        tr.update(0, vec![sample(0, 0.0, 0.0, &[Source::EoIr])]);
        tr.update(20, vec![]);
        assert!(tr.track(0).is_none());
    }

    #[test]
    fn velocity_and_heading_statistics() {
        let mut tr = Tracker::default();
        for t in 0..20 {
            tr.update(t, vec![sample(t, 5.0 * t as f64, 0.0, &[Source::Radar])]);
        }
        let track = tr.track(0).unwrap();
        let v = track.velocity_estimate();
        assert!((v.x - 5.0).abs() < 1e-9 && v.y.abs() < 1e-9);
        assert!(track.heading_variance() < 1e-12);
        assert!((track.mean_speed() - 5.0).abs() < 1e-9);

        // zig-zag between north-east and south-east every tick
        let mut tr = Tracker::default();
        let mut pos = Vec2::ZERO;
        for t in 0..30u64 {
            let mut s = sample(t, pos.x, pos.y, &[Source::Ais]);
            let v = if (t / 3) % 2 == 0 { Vec2::new(5.0, 5.0) } else { Vec2::new(5.0, -5.0) };
            s.reported_velocity = Some(v);
            s.identity = Some("zz".into());
            tr.update(t, vec![s]);
            pos = pos + v;
        }
        // headings ±π/4 around east: variance (π/4)² ≈ 0.617
        assert!(tr.track(0).unwrap().heading_variance() > 0.3);
    }
}
