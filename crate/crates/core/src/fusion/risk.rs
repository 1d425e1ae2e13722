use serde::{Deserialize, Serialize};

use super::{cpa, Category, RiskAssessment};
use crate::geometry::Vec2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RiskFlag {
    CpaBreach,
    FastMover,
    CloseQuarters,
    ComplexManeuver,
    PathIntersect,
    NoAisSmall,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RiskLevel {
    None,
    Watch,
    High,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RiskParams {
    pub d_safe_m: f64,
    pub t_horizon_s: f64,
    pub fast_mps: f64,
    pub close_m: f64,
    pub heading_var_rad2: f64,
}

impl Default for RiskParams {
    fn default() -> Self {
        Self {
            d_safe_m: 500.0,
            t_horizon_s: 600.0,
            fast_mps: 15.0,
            close_m: 1_000.0,
            heading_var_rad2: 0.3,
        }
    }
}

/// What the risk rules need to know about one fused object.
#[derive(Debug, Clone, PartialEq)]
pub struct RiskInput {
    pub fid: u64,
    pub position_m: Vec2,
    pub velocity_mps: Vec2,
    pub category: super::Category,
    /// Heading variance over recent history, rad².
    pub heading_variance: f64,
}

/// Flags and a risk level for every object, relative to the own ship.
pub fn assess_risk(objects: &[RiskInput], own: (Vec2, Vec2), params: &RiskParams) -> Vec<RiskAssessment> {
    objects
        .iter()
        .map(|obj| {
            let (t_cpa_s, d_cpa_m) = cpa(own, (obj.position_m, obj.velocity_mps));
            let range = obj.position_m.distance(own.0);
            let mut flags = Vec::new();
            let breach = d_cpa_m < params.d_safe_m && t_cpa_s < params.t_horizon_s;
            let fast = obj.velocity_mps.norm() > params.fast_mps;
            let close = range < params.close_m;
            if breach {
                flags.push(RiskFlag::CpaBreach);
            }
            if fast {
                flags.push(RiskFlag::FastMover);
            }
            if close {
                flags.push(RiskFlag::CloseQuarters);
            }
            if obj.heading_variance > params.heading_var_rad2 {
                flags.push(RiskFlag::ComplexManeuver);
            }
            if breach && t_cpa_s > 0.0 {
                flags.push(RiskFlag::PathIntersect);
            }
            if obj.category == Category::SmallObject {
                flags.push(RiskFlag::NoAisSmall);
            }
            let risk = if breach || (close && fast) {
                RiskLevel::High
            } else if flags.is_empty() {
                RiskLevel::None
            } else {
                RiskLevel::Watch
            };
            RiskAssessment {
                fid: obj.fid,
                t_cpa_s,
                d_cpa_m,
                flags,
                risk,
            }
        })
        .collect()
}
