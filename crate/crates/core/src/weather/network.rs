//! Ranking, Markov forecasting, and online learning over the state network.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use super::{Matched, WeatherAssessment, WeatherFeatureVector, WeatherStateNetwork, WeatherTemplate};
use crate::error::Result;
use crate::manager::WeightRecipe;

/// How long after a reinforcement or update a template still ranks as recent.
pub const RECENT_UPDATE_HORIZON_S: f64 = 3_600.0;

fn recency_desc(a: Option<f64>, b: Option<f64>) -> Ordering {
    match (a, b) {
        (Some(x), Some(y)) => y.total_cmp(&x),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => Ordering::Equal,
    }
}

/// Orders every template: most recently used, then recently reinforced or
/// updated, then templates linked as events from either of those, then the rest.
/// Within a class, later `last_used_t` first, then by name.
pub fn rank_templates(network: &WeatherStateNetwork, now_t: f64) -> Vec<String> {
    let latest_use = network
        .nodes
        .values()
        .filter_map(|t| t.last_used_t)
        .max_by(f64::total_cmp);

    let mut class: BTreeMap<&str, u8> = BTreeMap::new();
    for t in network.nodes.values() {
        let used_last = latest_use.is_some() && t.last_used_t == latest_use;
        let recently_updated = t
            .last_updated_t
            .is_some_and(|u| u <= now_t && now_t - u <= RECENT_UPDATE_HORIZON_S);
        let c = if used_last {
            1
        } else if recently_updated {
            2
        } else {
            4
        };
        class.insert(&t.name, c);
    }
    let linked: BTreeSet<&str> = network
        .nodes
        .values()
        .filter(|t| class[t.name.as_str()] <= 2)
        .flat_map(|t| t.event_links.iter().map(String::as_str))
        .collect();
    for name in linked {
        if let Some(c) = class.get_mut(name) {
            if *c == 4 {
                *c = 3;
            }
        }
    }

    let mut names: Vec<&WeatherTemplate> = network.nodes.values().collect();
    names.sort_by(|a, b| {
        class[a.name.as_str()]
            .cmp(&class[b.name.as_str()])
            .then_with(|| recency_desc(a.last_used_t, b.last_used_t))
            .then_with(|| a.name.cmp(&b.name))
    });
    names.into_iter().map(|t| t.name.clone()).collect()
}

/// Next-state distribution from normalized outgoing transition counts. A state
/// with no outgoing transitions forecasts itself.
pub fn forecast(network: &WeatherStateNetwork, current: &str) -> Result<BTreeMap<String, f64>> {
    network.template(current)?;
    let outgoing: Vec<(&String, u64)> = network
        .edges
        .iter()
        .filter(|((from, _), &count)| from == current && count > 0)
        .map(|((_, to), &count)| (to, count))
        .collect();
    let total: u64 = outgoing.iter().map(|(_, c)| c).sum();
    if total == 0 {
        return Ok(BTreeMap::from([(current.to_string(), 1.0)]));
    }
    Ok(outgoing
        .into_iter()
        .map(|(to, c)| (to.clone(), c as f64 / total as f64))
        .collect())
}

impl WeatherStateNetwork {
    /// Folds an assessment into the dictionary and returns the resulting state.
    ///
    /// A recognized situation is reinforced: its mean and spread absorb the
    /// features by Welford's update. Novel weather registers a provisional
    /// template named `novel-<t>` seeded from the features and its blend parents.
    /// Either way the transition from `previous` is counted.
    pub fn learn(
        &mut self,
        assessment: &WeatherAssessment,
        f: &WeatherFeatureVector,
        previous: &str,
        now_t: f64,
    ) -> Result<String> {
        let target = if assessment.novel {
            let name = novel_name(now_t);
            if self.nodes.contains_key(&name) {
                self.reinforce(&name, f, now_t)?;
            } else {
                let template = self.novel_template(&name, assessment, f, now_t)?;
                self.nodes.insert(name.clone(), template);
            }
            name
        } else {
            let name = match &assessment.matched {
                Matched::Single(name) => name.clone(),
                Matched::Blend(_) => assessment.primary().to_string(),
            };
            self.reinforce(&name, f, now_t)?;
            name
        };
        if self.nodes.contains_key(previous) {
            self.add_transition(previous, &target);
        }
        Ok(target)
    }

    #[allow(clippy::needless_range_loop)]
    fn reinforce(&mut self, name: &str, f: &WeatherFeatureVector, now_t: f64) -> Result<()> {
        self.template(name)?;
        let floor = self.sigma_floor;
        let t = self.nodes.get_mut(name).expect("checked above");
        let n = t.count as f64;
        let n1 = n + 1.0;
        for i in 0..5 {
            let m2 = t.sigma[i].powi(2) * n;
            let delta = f.0[i] - t.mu[i];
            let mu = t.mu[i] + delta / n1;
            let m2 = m2 + delta * (f.0[i] - mu);
            t.mu[i] = mu;
            t.sigma[i] = (m2 / n1).sqrt().max(floor[i]);
        }
        t.count += 1;
        t.last_used_t = Some(now_t);
        t.last_updated_t = Some(now_t);
        Ok(())
    }

    fn novel_template(
        &self,
        name: &str,
        assessment: &WeatherAssessment,
        f: &WeatherFeatureVector,
        now_t: f64,
    ) -> Result<WeatherTemplate> {
        let parents = assessment
            .weights()
            .into_iter()
            .map(|(n, w)| Ok((self.template(&n)?, w)))
            .collect::<Result<Vec<_>>>()?;
        let mut sigma = [0.0; 5];
        let mut schedule = BTreeMap::new();
        for (p, w) in &parents {
            for (s, ps) in sigma.iter_mut().zip(p.sigma) {
                *s += w * ps;
            }
            for (&channel, &period) in &p.schedule {
                *schedule.entry(channel).or_insert(0.0) += w * period;
            }
        }
        for (s, floor) in sigma.iter_mut().zip(self.sigma_floor) {
            *s = s.max(floor);
        }
        let recipes: Vec<(&WeightRecipe, f64)> =
            parents.iter().map(|(p, w)| (&p.weight_profile, *w)).collect();
        let heaviest = self.template(assessment.primary())?;
        Ok(WeatherTemplate {
            name: name.to_string(),
            mu: f.0,
            sigma,
            count: 1,
            last_used_t: Some(now_t),
            last_updated_t: Some(now_t),
            schedule,
            weight_profile: WeightRecipe::blend(&recipes),
            settings: heaviest.settings.clone(),
            event_links: parents.iter().map(|(p, _)| p.name.clone()).collect(),
            provisional: true,
        })
    }
}

fn novel_name(t_s: f64) -> String {
    if t_s.fract() == 0.0 {
        format!("novel-{t_s:.0}")
    } else {
        format!("novel-{t_s}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weather::{bootstrap_network, detect_weather};
    use proptest::prelude::*;

    fn fixture(names: &[&str]) -> WeatherStateNetwork {
        let mut net = bootstrap_network();
        let base = net.nodes["hazy"].clone();
        net.edges.clear();
        net.nodes = names
            .iter()
            .map(|n| {
                let mut t = base.clone();
                t.name = n.to_string();
                t.last_used_t = None;
                t.last_updated_t = None;
                t.event_links.clear();
                (n.to_string(), t)
            })
            .collect();
        net
    }

    #[test]
    fn ranking_by_use_then_update() {
        let mut net = fixture(&["A", "B", "C"]);
        net.nodes.get_mut("A").unwrap().last_used_t = Some(100.0);
        net.nodes.get_mut("B").unwrap().last_updated_t = Some(90.0);
        assert_eq!(rank_templates(&net, 100.0), ["A", "B", "C"]);
    }

    #[test]
    fn ranking_ties_are_alphabetical() {
        let mut net = fixture(&["delta", "alpha", "charlie", "bravo"]);
        for t in net.nodes.values_mut() {
            t.last_used_t = Some(5.0);
            t.last_updated_t = Some(5.0);
        }
        assert_eq!(rank_templates(&net, 5.0), ["alpha", "bravo", "charlie", "delta"]);
    }

    #[test]
    fn event_links_outrank_unrelated() {
        let mut net = fixture(&["A", "C", "D"]);
        let a = net.nodes.get_mut("A").unwrap();
        a.last_used_t = Some(10.0);
        a.event_links = vec!["D".into()];
        assert_eq!(rank_templates(&net, 10.0), ["A", "D", "C"]);
    }

    #[test]
    fn stale_updates_drop_to_the_bottom() {
        let mut net = fixture(&["A", "B", "C"]);
        net.nodes.get_mut("A").unwrap().last_used_t = Some(5_000.0);
        net.nodes.get_mut("C").unwrap().last_updated_t = Some(4_000.0);
        net.nodes.get_mut("B").unwrap().last_updated_t = Some(100.0);
        assert_eq!(rank_templates(&net, 5_000.0), ["A", "C", "B"]);
    }

    #[test]
    fn forecast_examples() {
        let mut net = fixture(&["clear", "haze", "rain"]);
        assert_eq!(forecast(&net, "clear").unwrap(), BTreeMap::from([("clear".into(), 1.0)]));
        for _ in 0..3 {
            net.add_transition("clear", "haze");
        }
        net.add_transition("clear", "rain");
        assert_eq!(
            forecast(&net, "clear").unwrap(),
            BTreeMap::from([("haze".into(), 0.75), ("rain".into(), 0.25)])
        );
        net.add_transition("haze", "rain");
        net.add_transition("haze", "rain");
        net.add_transition("haze", "clear");
        net.add_transition("haze", "clear");
        assert_eq!(
            forecast(&net, "haze").unwrap(),
            BTreeMap::from([("clear".into(), 0.5), ("rain".into(), 0.5)])
        );
    }

    fn single(name: &str) -> WeatherAssessment {
        WeatherAssessment {
            matched: Matched::Single(name.into()),
            distance: 0.0,
            novel: false,
            t_s: 0.0,
        }
    }

    #[test]
    fn reinforcing_at_the_mean_only_counts() {
        let mut net = bootstrap_network();
        let before = net.nodes["hazy"].clone();
        let state = net
            .learn(&single("hazy"), &WeatherFeatureVector(before.mu), "clear_sunny", 40.0)
            .unwrap();
        assert_eq!(state, "hazy");
        let after = &net.nodes["hazy"];
        assert_eq!(after.mu, before.mu);
        assert_eq!(after.count, before.count + 1);
        assert_eq!(after.last_used_t, Some(40.0));
        assert_eq!(net.edge_count("clear_sunny", "hazy"), 2);
    }

    #[test]
    fn symmetric_updates_keep_the_mean() {
        // Hand Welford with n = 1, sigma0 = 1, delta = 4:
        //   M2 after both = sigma0^2 + 2 delta^2 = 33 over n = 3 -> sigma = sqrt(11)
        let mut net = fixture(&["w"]);
        net.sigma_floor = [1e-6; 5];
        let t = net.nodes.get_mut("w").unwrap();
        t.count = 1;
        t.mu = [10.0; 5];
        t.sigma = [1.0; 5];
        net.learn(&single("w"), &WeatherFeatureVector([14.0; 5]), "w", 1.0).unwrap();
        net.learn(&single("w"), &WeatherFeatureVector([6.0; 5]), "w", 2.0).unwrap();
        let t = &net.nodes["w"];
        for i in 0..5 {
            assert!((t.mu[i] - 10.0).abs() < 1e-12);
            assert!((t.sigma[i] - 11f64.sqrt()).abs() < 1e-12);
        }
        assert_eq!(t.count, 3);
    }

    #[test]
    fn novel_weather_registers_provisional_template() {
        let mut net = bootstrap_network();
        let f = WeatherFeatureVector([900.0, 60.0, 45.0, 10.0, 100_000.0]);
        let a = detect_weather(&f, &net, "clear_sunny", 120.0).unwrap();
        assert!(a.novel);
        let before = net.nodes.len();
        let name = net.learn(&a, &f, "clear_sunny", 120.0).unwrap();
        assert_eq!(name, "novel-120");
        assert_eq!(net.nodes.len(), before + 1);
        let t = &net.nodes[&name];
        assert!(t.provisional);
        assert_eq!(t.mu, f.0);
        assert!(t.weight_profile.is_valid());
        assert_eq!(net.edge_count("clear_sunny", "novel-120"), 1);
        assert!(net.diagnostics().is_empty());
        // the new template now explains the same features
        let again = detect_weather(&f, &net, &name, 130.0).unwrap();
        assert_eq!(again.matched, Matched::Single(name));
    }

    proptest! {
        #[test]
        fn forecast_is_a_scale_invariant_distribution(
            counts in prop::collection::vec(0u64..50, 4),
            scale in 1u64..20,
        ) {
            let names = ["a", "b", "c", "d"];
            let mut net = fixture(&names);
            for (to, &c) in names.iter().zip(&counts) {
                if c > 0 {
                    net.edges.insert(("a".into(), to.to_string()), c);
                }
            }
            let p = forecast(&net, "a").unwrap();
            prop_assert!((p.values().sum::<f64>() - 1.0).abs() <= 1e-9);
            for c in net.edges.values_mut() { *c *= scale; }
            let q = forecast(&net, "a").unwrap();
            prop_assert_eq!(p.len(), q.len());
            for (k, v) in &p {
                prop_assert!((v - q[k]).abs() <= 1e-12);
            }
        }

        #[test]
        fn ranking_is_a_permutation(
            used in prop::collection::vec(prop::option::of(0.0f64..10_000.0), 6),
            updated in prop::collection::vec(prop::option::of(0.0f64..10_000.0), 6),
            link in 0usize..6,
        ) {
            let names = ["n0", "n1", "n2", "n3", "n4", "n5"];
            let mut net = fixture(&names);
            for (i, n) in names.iter().enumerate() {
                let t = net.nodes.get_mut(*n).unwrap();
                t.last_used_t = used[i];
                t.last_updated_t = updated[i];
            }
            net.nodes.get_mut("n0").unwrap().event_links = vec![names[link].to_string()];
            let mut r = rank_templates(&net, 10_000.0);
            r.sort();
            prop_assert_eq!(r, names.map(String::from).to_vec());
        }

        #[test]
        fn learning_preserves_template_invariants(
            fs in prop::collection::vec(prop::array::uniform5(0.0f64..1e5), 1..20),
        ) {
            let mut net = bootstrap_network();
            let mut current = "clear_sunny".to_string();
            for (i, f) in fs.into_iter().enumerate() {
                let f = WeatherFeatureVector(f);
                let t = 10.0 * (i + 1) as f64;
                let a = detect_weather(&f, &net, &current, t).unwrap();
                current = net.learn(&a, &f, &current, t).unwrap();
            }
            prop_assert!(net.diagnostics().is_empty(), "{:?}", net.diagnostics());
        }
    }
}
