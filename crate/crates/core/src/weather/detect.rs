use serde::{Deserialize, Serialize};

use super::{rank_templates, WeatherFeatureVector, WeatherStateNetwork, WeatherTemplate};
use crate::error::{Error, Result};

/// Which template(s) explain the current weather.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Matched {
    Single(String),
    /// Parents with nonnegative weights summing to one, heaviest first.
    Blend(Vec<(String, f64)>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeatherAssessment {
    pub matched: Matched,
    /// z-RMS distance to the best template.
    pub distance: f64,
    pub novel: bool,
    pub t_s: f64,
}

impl WeatherAssessment {
    /// Template names with their weights; a single match has weight 1.
    pub fn weights(&self) -> Vec<(String, f64)> {
        match &self.matched {
            Matched::Single(name) => vec![(name.clone(), 1.0)],
            Matched::Blend(parts) => parts.clone(),
        }
    }

    /// The single match, or the heaviest parent of a blend (first on ties).
    pub fn primary(&self) -> &str {
        match &self.matched {
            Matched::Single(name) => name,
            Matched::Blend(parts) => {
                let mut best = &parts[0];
                for p in &parts[1..] {
                    if p.1 > best.1 {
                        best = p;
                    }
                }
                &best.0
            }
        }
    }
}

/// Root-mean-square of per-channel z-scores.
pub fn template_distance(f: &WeatherFeatureVector, tpl: &WeatherTemplate) -> f64 {
    let sum_sq: f64 = f
        .0
        .iter()
        .zip(tpl.mu.iter().zip(&tpl.sigma))
        .map(|(x, (mu, sigma))| ((x - mu) / sigma).powi(2))
        .sum();
    (sum_sq / f.0.len() as f64).sqrt()
}

/// Decides which template explains the features.
///
/// The current template is kept while it stays within `theta_dev`. Otherwise the
/// ranked templates are scanned for the first within `theta_dev`; failing that the
/// closest template is accepted if within `theta_new`. Beyond that the weather is
/// novel and is described as an inverse-distance blend of the two closest templates.
pub fn detect_weather(
    f: &WeatherFeatureVector,
    network: &WeatherStateNetwork,
    current: &str,
    t_s: f64,
) -> Result<WeatherAssessment> {
    if network.nodes.is_empty() {
        return Err(Error::EmptyDictionary);
    }
    let th = network.thresholds;
    let single = |name: &str, distance: f64| WeatherAssessment {
        matched: Matched::Single(name.to_string()),
        distance,
        novel: false,
        t_s,
    };

    let d_current = template_distance(f, network.template(current)?);
    if d_current <= th.theta_dev {
        return Ok(single(current, d_current));
    }

    let ranked: Vec<(String, f64)> = rank_templates(network, t_s)
        .into_iter()
        .map(|name| {
            let d = template_distance(f, &network.nodes[&name]);
            (name, d)
        })
        .collect();
    if let Some((name, d)) = ranked.iter().find(|(_, d)| *d <= th.theta_dev) {
        return Ok(single(name, *d));
    }

    let mut closest = ranked;
    closest.sort_by(|a, b| a.1.total_cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    let (best_name, best_d) = closest[0].clone();
    if best_d <= th.theta_new {
        return Ok(single(&best_name, best_d));
    }

    let parents = &closest[..closest.len().min(2)];
    let inv: Vec<f64> = parents.iter().map(|(_, d)| 1.0 / d).collect();
    let total: f64 = inv.iter().sum();
    let blend = parents
        .iter()
        .zip(&inv)
        .map(|((name, _), w)| (name.clone(), w / total))
        .collect();
    Ok(WeatherAssessment {
        matched: Matched::Blend(blend),
        distance: best_d,
        novel: true,
        t_s,
    })
}
