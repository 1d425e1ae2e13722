use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::manager::{SettingsDirective, WeightRecipe};
use crate::world::Channel;

/// A learned weather situation: what it looks like to the weather sensors and
/// what the sensor manager should do while it holds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeatherTemplate {
    pub name: String,
    pub mu: [f64; 5],
    pub sigma: [f64; 5],
    pub count: u64,
    #[serde(default)]
    pub last_used_t: Option<f64>,
    #[serde(default)]
    pub last_updated_t: Option<f64>,
    pub schedule: BTreeMap<Channel, f64>,
    pub weight_profile: WeightRecipe,
    pub settings: SettingsDirective,
    #[serde(default)]
    pub event_links: Vec<String>,
    #[serde(default)]
    pub provisional: bool,
}

impl WeatherTemplate {
    fn diagnostics(&self, out: &mut Vec<String>) {
        let name = &self.name;
        if self.sigma.iter().any(|s| !(*s > 0.0)) {
            out.push(format!("template {name:?}: sigma must be > 0"));
        }
        if self.mu.iter().any(|m| !m.is_finite()) {
            out.push(format!("template {name:?}: mu must be finite"));
        }
        if self.count < 1 {
            out.push(format!("template {name:?}: count must be >= 1"));
        }
        if self.schedule.values().any(|p| !(*p > 0.0)) {
            out.push(format!("template {name:?}: periods must be > 0"));
        }
        if Channel::ALL.iter().any(|c| !self.schedule.contains_key(c)) {
            out.push(format!("template {name:?}: schedule must cover every channel"));
        }
        if !self.weight_profile.is_valid() {
            out.push(format!("template {name:?}: weight profile is not normalized"));
        }
        if !self.settings.is_valid() {
            out.push(format!("template {name:?}: gain and gamma must be > 0"));
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    /// z-RMS distance under which a template still explains the weather.
    pub theta_dev: f64,
    /// z-RMS distance beyond which the weather is treated as new.
    pub theta_new: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self {
            theta_dev: 3.0,
            theta_new: 6.0,
        }
    }
}

/// Templates as nodes, observed transitions as weighted directed edges.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "NetworkFile", into = "NetworkFile")]
pub struct WeatherStateNetwork {
    pub nodes: BTreeMap<String, WeatherTemplate>,
    pub edges: BTreeMap<(String, String), u64>,
    pub thresholds: Thresholds,
    /// Per-channel lower bound on template sigma, so repeated reinforcement
    /// cannot shrink a template below sensor noise.
    pub sigma_floor: [f64; 5],
}

#[derive(Serialize, Deserialize)]
struct EdgeRecord {
    from: String,
    to: String,
    count: u64,
}

#[derive(Serialize, Deserialize)]
struct NetworkFile {
    nodes: BTreeMap<String, WeatherTemplate>,
    edges: Vec<EdgeRecord>,
    #[serde(default)]
    thresholds: Thresholds,
    #[serde(default = "default_sigma_floor")]
    sigma_floor: [f64; 5],
}

fn default_sigma_floor() -> [f64; 5] {
    [5.0, 0.2, 0.3, 1.0, 50.0]
}

impl TryFrom<NetworkFile> for WeatherStateNetwork {
    type Error = String;

    fn try_from(file: NetworkFile) -> Result<Self, String> {
        let mut edges = BTreeMap::new();
        for e in file.edges {
            *edges.entry((e.from, e.to)).or_insert(0) += e.count;
        }
        let network = WeatherStateNetwork {
            nodes: file.nodes,
            edges,
            thresholds: file.thresholds,
            sigma_floor: file.sigma_floor,
        };
        match network.diagnostics().into_iter().next() {
            Some(first) => Err(first),
            None => Ok(network),
        }
    }
}

impl From<WeatherStateNetwork> for NetworkFile {
    fn from(n: WeatherStateNetwork) -> Self {
        NetworkFile {
            nodes: n.nodes,
            edges: n
                .edges
                .into_iter()
                .map(|((from, to), count)| EdgeRecord { from, to, count })
                .collect(),
            thresholds: n.thresholds,
            sigma_floor: n.sigma_floor,
        }
    }
}

impl WeatherStateNetwork {
    pub fn template(&self, name: &str) -> Result<&WeatherTemplate> {
        self.nodes
            .get(name)
            .ok_or_else(|| Error::UnknownTemplate(name.to_string()))
    }

    pub fn edge_count(&self, from: &str, to: &str) -> u64 {
        self.edges
            .get(&(from.to_string(), to.to_string()))
            .copied()
            .unwrap_or(0)
    }

    pub fn add_transition(&mut self, from: &str, to: &str) {
        *self
            .edges
            .entry((from.to_string(), to.to_string()))
            .or_insert(0) += 1;
    }

    pub fn diagnostics(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (key, t) in &self.nodes {
            if key != &t.name {
                out.push(format!("node key {key:?} does not match template name {:?}", t.name));
            }
            t.diagnostics(&mut out);
        }
        for (from, to) in self.edges.keys() {
            for end in [from, to] {
                if !self.nodes.contains_key(end) {
                    out.push(format!("edge endpoint {end:?} is not a node"));
                }
            }
        }
        let known: BTreeSet<&String> = self.nodes.keys().collect();
        for t in self.nodes.values() {
            for link in &t.event_links {
                if !known.contains(link) {
                    out.push(format!("template {:?}: event link {link:?} is not a node", t.name));
                }
            }
        }
        if !(self.thresholds.theta_dev > 0.0 && self.thresholds.theta_new >= self.thresholds.theta_dev) {
            out.push("thresholds must satisfy 0 < theta_dev <= theta_new".to_string());
        }
        if self.sigma_floor.iter().any(|s| !(*s > 0.0)) {
            out.push("sigma_floor must be > 0".to_string());
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json()? + "\n")?;
        Ok(())
    }
}

/// The shipped dictionary: clear_sunny, hazy, rainy, and stormy.
pub fn bootstrap_network() -> WeatherStateNetwork {
    serde_json::from_str(include_str!("../../data/dictionary.json"))
        .expect("shipped dictionary is valid")
}

pub fn load_network(path: impl AsRef<Path>) -> Result<WeatherStateNetwork> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}
