use std::collections::BTreeSet;

use super::{
    assess_risk, associate, classify_unmatched, fuse_position, AssociationParams, Category, EventCounter,
    FusedObject, RiskAssessment, RiskInput, RiskLevel, RiskParams, TrackSample, Tracker,
};
use crate::geometry::Vec2;
use crate::manager::WeightProfile;
use crate::sensors::{Detection, RadarConfig, Source};

/// Fused objects and their risk for one tick, both ordered by fid.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TickAwareness {
    pub t_s: f64,
    pub fused: Vec<FusedObject>,
    pub risks: Vec<RiskAssessment>,
}

/// The stateful part of situational awareness: track histories and the event
/// counter feeding the need-to-learn signal.
#[derive(Debug, Clone, Default)]
pub struct AwarenessPipeline {
    pub association: AssociationParams,
    pub risk: RiskParams,
    pub radar: RadarConfig,
    pub events: EventCounter,
    tracker: Tracker,
    announced: BTreeSet<(u64, &'static str)>,
}

impl AwarenessPipeline {
    pub fn new(radar: RadarConfig) -> Self {
        Self {
            radar,
            ..Self::default()
        }
    }

    pub fn tracker(&self) -> &Tracker {
        &self.tracker
    }

    /// Associates, fuses, tracks, classifies and assesses one tick of detections.
    pub fn step(
        &mut self,
        tick: u64,
        t_s: f64,
        detections: &[Detection],
        own: (Vec2, Vec2),
        weights: &WeightProfile,
    ) -> TickAwareness {
        let (own_pos, own_vel) = own;
        let assoc = associate(detections, own_pos, weights, &self.association);
        let groups: Vec<Vec<Detection>> = assoc
            .groups
            .into_iter()
            .chain(assoc.unmatched.into_iter().map(|d| vec![d]))
            .collect();

        let mut fused_parts = Vec::with_capacity(groups.len());
        let mut samples = Vec::with_capacity(groups.len());
        for group in groups {
            let (position_m, velocity_mps) = fuse_position(&group, own_pos, weights);
            let ais = group.iter().find(|d| d.source == Source::Ais);
            let identity = ais.and_then(|d| d.object_hint.clone());
            samples.push(TrackSample {
                tick,
                t_s,
                position_m,
                reported_velocity: ais.and_then(|d| d.velocity_mps),
                sources: group.iter().map(|d| d.source).collect(),
                size_class: group.iter().find_map(|d| d.size_class_estimate),
                range_m: position_m.distance(own_pos),
                identity: identity.clone(),
            });
            fused_parts.push((group, position_m, velocity_mps, identity));
        }
        let fids = self.tracker.update(tick, samples);

        let mut fused = Vec::with_capacity(fids.len());
        let mut inputs = Vec::with_capacity(fids.len());
        for (fid, (group, position_m, velocity_mps, identity)) in fids.into_iter().zip(fused_parts) {
            let track = self.tracker.track(fid).expect("tracker returned this fid");
            let category = if identity.is_some() {
                Category::AisConfirmed
            } else if group.len() > 1 && group.iter().any(|d| d.source == Source::Radar) {
                Category::RadarEo
            } else {
                classify_unmatched(track, &self.radar)
            };
            inputs.push(RiskInput {
                fid,
                position_m,
                velocity_mps: velocity_mps.unwrap_or_else(|| track.velocity_estimate()),
                category,
                heading_variance: track.heading_variance(),
            });
            fused.push(FusedObject {
                fid,
                contributing: group,
                position_m,
                velocity_mps,
                identity,
                category,
                first_seen_t: track.first_seen_t,
                last_seen_t: t_s,
            });
        }
        let mut risks = assess_risk(&inputs, (own_pos, own_vel), &self.risk);

        for (obj, risk) in fused.iter().zip(&risks) {
            self.announce(t_s, obj.fid, "contact", &format!("contact:{}", category_name(obj.category)));
            match risk.risk {
                RiskLevel::High => self.announce(t_s, obj.fid, "risk_high", "risk_high"),
                RiskLevel::Watch => self.announce(t_s, obj.fid, "risk_watch", "risk_watch"),
                RiskLevel::None => {}
            }
        }
        self.events.expire(t_s);

        fused.sort_by_key(|o| o.fid);
        risks.sort_by_key(|r| r.fid);
        TickAwareness { t_s, fused, risks }
    }

    fn announce(&mut self, t_s: f64, fid: u64, slot: &'static str, kind: &str) {
        if self.announced.insert((fid, slot)) {
            self.events.record(t_s, kind);
        }
    }
}

fn category_name(c: Category) -> &'static str {
    match c {
        Category::AisConfirmed => "ais_confirmed",
        Category::RadarEo => "radar_eo",
        Category::SmallObject => "small_object",
        Category::FixedStructure => "fixed_structure",
        Category::Spurious => "spurious",
        Category::Underwater => "underwater",
    }
}
