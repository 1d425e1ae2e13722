use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weather::{WeatherAssessment, WeatherStateNetwork};
use crate::world::Channel;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScheduleEntry {
    pub period_s: f64,
    pub next_due_t: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub last_polled_t: Option<f64>,
}

/// Polling plan for the weather channels.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SensorSchedule {
    pub entries: BTreeMap<Channel, ScheduleEntry>,
}

impl SensorSchedule {
    /// A schedule where every channel is due at t = 0.
    pub fn from_periods(periods: &BTreeMap<Channel, f64>) -> Self {
        Self {
            entries: periods
                .iter()
                .map(|(&c, &period_s)| {
                    (
                        c,
                        ScheduleEntry {
                            period_s,
                            next_due_t: 0.0,
                            last_polled_t: None,
                        },
                    )
                })
                .collect(),
        }
    }

    pub fn periods(&self) -> BTreeMap<Channel, f64> {
        self.entries.iter().map(|(&c, e)| (c, e.period_s)).collect()
    }

    pub fn period(&self, channel: Channel) -> Option<f64> {
        self.entries.get(&channel).map(|e| e.period_s)
    }

    /// Channels whose next poll is at or before `t_s`, in channel order.
    pub fn due_sensors(&self, t_s: f64) -> Vec<Channel> {
        self.entries
            .iter()
            .filter(|(_, e)| t_s >= e.next_due_t)
            .map(|(&c, _)| c)
            .collect()
    }

    pub fn mark_polled(&mut self, channel: Channel, t_s: f64) -> Result<()> {
        let entry = self
            .entries
            .get_mut(&channel)
            .ok_or_else(|| Error::UnknownSensor(channel.name().to_string()))?;
        entry.next_due_t = t_s + entry.period_s;
        entry.last_polled_t = Some(t_s);
        Ok(())
    }

    /// Looks a channel up by name, for callers holding sensor names as strings.
    pub fn channel_named(&self, name: &str) -> Result<Channel> {
        Channel::from_name(name)
            .filter(|c| self.entries.contains_key(c))
            .ok_or_else(|| Error::UnknownSensor(name.to_string()))
    }

    /// Swaps in new periods at wall time `now_t`, keeping poll history. A channel
    /// becomes due at `last_polled + new_period`, but never earlier than `now_t`.
    pub fn retime(&mut self, periods: &BTreeMap<Channel, f64>, now_t: f64) {
        for (&channel, &period_s) in periods {
            let entry = self.entries.entry(channel).or_insert(ScheduleEntry {
                period_s,
                next_due_t: now_t,
                last_polled_t: None,
            });
            entry.period_s = period_s;
            if let Some(last) = entry.last_polled_t {
                entry.next_due_t = (last + period_s).max(now_t);
            }
        }
    }
}

/// Polling periods for an assessment. A blend takes the weight-averaged period of
/// its parents, rounded up to whole seconds.
pub fn build_schedule(
    assessment: &WeatherAssessment,
    network: &WeatherStateNetwork,
) -> Result<SensorSchedule> {
    let parents = assessment.weights();
    if let [(name, _)] = parents.as_slice() {
        return Ok(SensorSchedule::from_periods(&network.template(name)?.schedule));
    }
    let mut blended: BTreeMap<Channel, f64> = BTreeMap::new();
    for (name, w) in &parents {
        for (&channel, &period) in &network.template(name)?.schedule {
            *blended.entry(channel).or_default() += w * period;
        }
    }
    for period in blended.values_mut() {
        // absorb rounding noise before the ceiling: 22.500000000000004 must stay 23, 10.0000000001 must stay 10
        *period = ((*period * 1e6).round() / 1e6).ceil().max(1.0);
    }
    Ok(SensorSchedule::from_periods(&blended))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weather::{bootstrap_network, Matched};

    fn single(name: &str) -> WeatherAssessment {
        WeatherAssessment {
            matched: Matched::Single(name.into()),
            distance: 0.0,
            novel: false,
            t_s: 0.0,
        }
    }

    #[test]
    fn shipped_periods() {
        let net = bootstrap_network();
        let hazy = build_schedule(&single("hazy"), &net).unwrap();
        assert_eq!(hazy.period(Channel::Aerosol), Some(10.0));
        assert_eq!(hazy.period(Channel::Luminance), Some(600.0));
        let clear = build_schedule(&single("clear_sunny"), &net).unwrap();
        assert!(clear.period(Channel::Humidity).unwrap() > hazy.period(Channel::Humidity).unwrap());
        assert!(matches!(build_schedule(&single("fog"), &net), Err(Error::UnknownTemplate(_))));
    }

    #[test]
    fn blended_period_rounds_up() {
        let net = bootstrap_network();
        let blend = WeatherAssessment {
            matched: Matched::Blend(vec![("hazy".into(), 0.75), ("rainy".into(), 0.25)]),
            distance: 8.0,
            novel: true,
            t_s: 0.0,
        };
        let s = build_schedule(&blend, &net).unwrap();
        assert_eq!(s.period(Channel::Aerosol), Some(23.0));
    }

    #[test]
    fn due_and_mark() {
        let mut s = SensorSchedule::from_periods(&BTreeMap::from([(Channel::Wind, 10.0)]));
        s.mark_polled(Channel::Wind, 0.0).unwrap();
        assert_eq!(s.due_sensors(10.0), vec![Channel::Wind]);
        assert!(s.due_sensors(9.5).is_empty());
        s.mark_polled(Channel::Wind, 10.0).unwrap();
        assert_eq!(s.entries[&Channel::Wind].next_due_t, 20.0);
        assert!(matches!(s.mark_polled(Channel::Rain, 1.0), Err(Error::UnknownSensor(_))));
        assert!(matches!(s.channel_named("sonar"), Err(Error::UnknownSensor(_))));
    }

    #[test]
    fn polling_liveness() {
        for period in [1.0, 3.0, 7.0, 10.0, 60.0, 300.0] {
            let horizon = 1_000u32;
            let mut s = SensorSchedule::from_periods(&BTreeMap::from([(Channel::Aerosol, period)]));
            let mut polls = 0;
            for t in 0..=horizon {
                let t = f64::from(t);
                for c in s.due_sensors(t) {
                    s.mark_polled(c, t).unwrap();
                    polls += 1;
                }
            }
            assert_eq!(polls, (f64::from(horizon) / period).floor() as u32 + 1, "period {period}");
        }
    }

    #[test]
    fn retime_speeds_up_without_going_back_in_time() {
        let mut s = SensorSchedule::from_periods(&BTreeMap::from([(Channel::Aerosol, 300.0)]));
        s.mark_polled(Channel::Aerosol, 0.0).unwrap();
        let faster = BTreeMap::from([(Channel::Aerosol, 10.0)]);
        s.retime(&faster, 120.0);
        assert_eq!(s.entries[&Channel::Aerosol].next_due_t, 120.0);
        let again = s.clone();
        s.retime(&faster, 120.0);
        assert_eq!(s, again);
    }
}
