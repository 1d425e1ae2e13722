//! Fuzzy correspondence between reports from different sources.
//!
//! Each cross-source pair gets an affinity in (0, 1] from its position and,
//! when both sides know it, velocity mismatch. Strong pairs merge outright.
//! Loose pairs merge only when one side is AIS or both sources are trusted at
//! their range under the current weight profile. Merging is greedy in
//! descending affinity, and a group never holds two reports from one source.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::geometry::Vec2;
use crate::manager::WeightProfile;
use crate::sensors::{Detection, Source};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AssociationParams {
    pub sigma_p_m: f64,
    pub sigma_v_mps: f64,
    pub mu_accept: f64,
    pub mu_loose: f64,
    /// Zone weight both sides need for a loose pair to merge without AIS.
    pub loose_min_weight: f64,
}

impl Default for AssociationParams {
    fn default() -> Self {
        Self {
            sigma_p_m: 100.0,
            sigma_v_mps: 2.0,
            mu_accept: 0.5,
            mu_loose: 0.1,
            loose_min_weight: 0.3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Association {
    /// Groups of two or more reports, each from distinct sources.
    pub groups: Vec<Vec<Detection>>,
    pub unmatched: Vec<Detection>,
}

pub fn affinity(a: &Detection, b: &Detection, params: &AssociationParams) -> f64 {
    let dp_sq = (a.position_m - b.position_m).norm_sq();
    let mut exponent = -dp_sq / (2.0 * params.sigma_p_m.powi(2));
    if let (Some(va), Some(vb)) = (a.velocity_mps, b.velocity_mps) {
        exponent -= (va - vb).norm_sq() / (2.0 * params.sigma_v_mps.powi(2));
    }
    exponent.exp()
}

fn canonical_cmp(a: &Detection, b: &Detection) -> Ordering {
    a.source
        .cmp(&b.source)
        .then_with(|| a.position_m.x.total_cmp(&b.position_m.x))
        .then_with(|| a.position_m.y.total_cmp(&b.position_m.y))
        .then_with(|| a.object_hint.cmp(&b.object_hint))
        .then_with(|| a.confidence.total_cmp(&b.confidence))
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Partitions detections into multi-source groups and unmatched singletons.
/// The result does not depend on input order.
pub fn associate(
    detections: &[Detection],
    own_pos: Vec2,
    weights: &WeightProfile,
    params: &AssociationParams,
) -> Association {
    let mut dets: Vec<Detection> = detections.to_vec();
    dets.sort_by(canonical_cmp);
    let n = dets.len();

    let zone_weight = |d: &Detection| weights.weight(d.source, d.position_m.distance(own_pos));
    let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if dets[i].source == dets[j].source {
                continue;
            }
            let mu = affinity(&dets[i], &dets[j], params);
            let accept = if mu >= params.mu_accept {
                true
            } else if mu >= params.mu_loose {
                let anchored = dets[i].source == Source::Ais || dets[j].source == Source::Ais;
                anchored
                    || (zone_weight(&dets[i]) >= params.loose_min_weight
                        && zone_weight(&dets[j]) >= params.loose_min_weight)
            } else {
                false
            };
            if accept {
                pairs.push((mu, i, j));
            }
        }
    }
    // descending affinity; canonical indices already encode the source-then-id tie-break
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));

    let mut parent: Vec<usize> = (0..n).collect();
    let mut sources: Vec<Vec<Source>> = dets.iter().map(|d| vec![d.source]).collect();
    for (_, i, j) in pairs {
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        if ri == rj || sources[ri].iter().any(|s| sources[rj].contains(s)) {
            continue;
        }
        let (keep, gone) = if ri < rj { (ri, rj) } else { (rj, ri) };
        parent[gone] = keep;
        let moved = std::mem::take(&mut sources[gone]);
        sources[keep].extend(moved);
    }

    let mut buckets: Vec<Vec<Detection>> = vec![Vec::new(); n];
    for (i, det) in dets.into_iter().enumerate() {
        let root = find(&mut parent, i);
        buckets[root].push(det);
    }
    let mut out = Association::default();
    for bucket in buckets.into_iter().filter(|b| !b.is_empty()) {
        if bucket.len() == 1 {
            out.unmatched.extend(bucket);
        } else {
            out.groups.push(bucket);
        }
    }
    out
}
