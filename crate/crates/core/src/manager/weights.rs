//! Range-zoned fusion weights.
//!
//! In clear air the visible camera owns the radar's shadow region and radar owns
//! everything beyond it. In haze the picture splits three ways: the visible camera
//! is trusted only near-field, the IR camera through its effective visibility, and
//! radar past that. AIS sits outside the zones with a fixed weight of 1.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sensors::Source;
use crate::weather::{WeatherAssessment, WeatherStateNetwork};

pub const AIS_WEIGHT: f64 = 1.0;

/// Near-field limit for visible-camera dominance in haze, meters.
pub const HAZE_NEAR_FIELD_M: f64 = 500.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SourceWeights {
    pub eo_vis: f64,
    pub eo_ir: f64,
    pub radar: f64,
}

impl SourceWeights {
    pub const fn new(eo_vis: f64, eo_ir: f64, radar: f64) -> Self {
        Self { eo_vis, eo_ir, radar }
    }

    pub fn sum(&self) -> f64 {
        self.eo_vis + self.eo_ir + self.radar
    }

    /// Source with the largest weight; ties go to the earlier of vis, ir, radar.
    pub fn argmax(&self) -> Source {
        let mut best = (Source::EoVis, self.eo_vis);
        for cand in [(Source::EoIr, self.eo_ir), (Source::Radar, self.radar)] {
            if cand.1 > best.1 {
                best = cand;
            }
        }
        best.0
    }

    fn scaled_add(self, other: SourceWeights, w: f64) -> SourceWeights {
        SourceWeights::new(
            self.eo_vis + w * other.eo_vis,
            self.eo_ir + w * other.eo_ir,
            self.radar + w * other.radar,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightFamily {
    /// Two zones split at the radar shadow edge.
    Clear,
    /// Three zones split at the near field and the IR visibility.
    Haze,
}

impl WeightFamily {
    pub fn zone_count(self) -> usize {
        match self {
            WeightFamily::Clear => 2,
            WeightFamily::Haze => 3,
        }
    }
}

/// Zone weights a template prescribes; boundaries are filled in from visibility.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightRecipe {
    pub family: WeightFamily,
    pub zones: Vec<SourceWeights>,
}

impl WeightRecipe {
    pub fn clear_default() -> Self {
        Self {
            family: WeightFamily::Clear,
            zones: vec![SourceWeights::new(0.7, 0.3, 0.0), SourceWeights::new(0.3, 0.1, 0.6)],
        }
    }

    pub fn haze_default() -> Self {
        Self {
            family: WeightFamily::Haze,
            zones: vec![
                SourceWeights::new(0.6, 0.3, 0.1),
                SourceWeights::new(0.1, 0.6, 0.3),
                SourceWeights::new(0.0, 0.1, 0.9),
            ],
        }
    }

    pub fn is_valid(&self) -> bool {
        self.zones.len() == self.family.zone_count()
            && self.zones.iter().all(|z| {
                [z.eo_vis, z.eo_ir, z.radar].iter().all(|w| (0.0..=1.0).contains(w))
                    && (z.sum() - 1.0).abs() <= 1e-9
            })
    }

    /// Weighted mix of recipes. Families must agree, otherwise the heaviest parent wins.
    pub fn blend(parents: &[(&WeightRecipe, f64)]) -> WeightRecipe {
        let heaviest = parents
            .iter()
            .fold(None::<(&WeightRecipe, f64)>, |best, &(r, w)| match best {
                Some((_, bw)) if bw >= w => best,
                _ => Some((r, w)),
            })
            .map(|(r, _)| r)
            .expect("blend needs at least one parent");
        if parents.iter().any(|(r, _)| r.family != heaviest.family) {
            return heaviest.clone();
        }
        let total: f64 = parents.iter().map(|(_, w)| w).sum();
        let zones = (0..heaviest.zones.len())
            .map(|i| {
                parents.iter().fold(SourceWeights::new(0.0, 0.0, 0.0), |acc, (r, w)| {
                    acc.scaled_add(r.zones[i], w / total)
                })
            })
            .collect();
        WeightRecipe {
            family: heaviest.family,
            zones,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Zone {
    pub d_lo_m: f64,
    /// Open upper bound; `None` is infinity.
    pub d_hi_m: Option<f64>,
    pub weights: SourceWeights,
}

impl Zone {
    pub fn contains(&self, d: f64) -> bool {
        d >= self.d_lo_m && self.d_hi_m.is_none_or(|hi| d < hi)
    }
}

/// Contiguous zones covering [0, ∞), plus the fixed AIS weight.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightProfile {
    pub zones: Vec<Zone>,
    pub ais_weight: f64,
}

impl WeightProfile {
    pub fn from_recipe(recipe: &WeightRecipe, boundaries: &[f64]) -> Self {
        debug_assert_eq!(boundaries.len() + 1, recipe.zones.len());
        let mut lo = 0.0;
        let mut zones = Vec::with_capacity(recipe.zones.len());
        for (i, weights) in recipe.zones.iter().enumerate() {
            let hi = boundaries.get(i).map(|&b| b.max(lo));
            zones.push(Zone {
                d_lo_m: lo,
                d_hi_m: hi,
                weights: *weights,
            });
            lo = hi.unwrap_or(lo);
        }
        Self {
            zones,
            ais_weight: AIS_WEIGHT,
        }
    }

    pub fn zone_at(&self, d: f64) -> &Zone {
        self.zones
            .iter()
            .find(|z| z.contains(d))
            .unwrap_or_else(|| self.zones.last().expect("profile has zones"))
    }

    /// Weight of a source's report at range `d`. Sonar borrows the radar weight.
    pub fn weight(&self, source: Source, d: f64) -> f64 {
        let w = self.zone_at(d).weights;
        match source {
            Source::EoVis => w.eo_vis,
            Source::EoIr => w.eo_ir,
            Source::Radar | Source::Sonar => w.radar,
            Source::Ais => self.ais_weight,
        }
    }
}

/// Builds the zoned weight profile for an assessment.
///
/// `vis_m` is the visible-band visibility, `vis_ir_m` the IR effective visibility,
/// and `radar_r_min_m` the radar shadow edge used by clear-family profiles.
pub fn build_weights(
    assessment: &WeatherAssessment,
    network: &WeatherStateNetwork,
    vis_m: f64,
    vis_ir_m: f64,
    radar_r_min_m: f64,
) -> Result<WeightProfile> {
    if !(vis_m > 0.0) {
        return Err(Error::Domain(format!("visibility must be > 0 (got {vis_m})")));
    }
    let parents = assessment
        .weights()
        .into_iter()
        .map(|(name, w)| Ok((&network.template(&name)?.weight_profile, w)))
        .collect::<Result<Vec<_>>>()?;
    let recipe = WeightRecipe::blend(&parents);
    let boundaries = match recipe.family {
        WeightFamily::Clear => vec![radar_r_min_m],
        WeightFamily::Haze => {
            let near = HAZE_NEAR_FIELD_M.min(vis_m / 2.0);
            vec![near, vis_ir_m.max(near)]
        }
    };
    Ok(WeightProfile::from_recipe(&recipe, &boundaries))
}
